// Copyright 2026 The irs-isac Authors
// SPDX-License-Identifier: Apache-2.0

#include "isac/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include <json.hpp>
#include <spdlog/spdlog.h>

#include "isac/errors.hpp"
#include "isac/rng.hpp"

namespace isac {

namespace {

using nlohmann::json;

constexpr const char* kCsvHeader =
    "seed,trial,gamma_db,receiver_type,scheme,status,crb,crb_db,outer_iters,wall_ms";

const Geometry kDefaultGeometry{};

// Object reader that remembers which keys were consumed so leftovers can be
// reported as unknown.
class Fields {
 public:
  Fields(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ValidationError(path_ + ": expected an object");
  }

  const json* get(const std::string& key) {
    seen_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  std::string name(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  template <typename T>
  void read(const std::string& key, T& out) {
    const json* v = get(key);
    if (!v) return;
    try {
      if constexpr (std::is_integral_v<T>) {
        if (!v->is_number_integer()) throw ValidationError("");
        if constexpr (std::is_unsigned_v<T>) {
          if (v->is_number_unsigned()) out = v->get<T>();
          else if (v->get<long long>() >= 0) out = static_cast<T>(v->get<long long>());
          else throw ValidationError("");
        } else {
          out = v->get<T>();
        }
      } else if constexpr (std::is_floating_point_v<T>) {
        if (!v->is_number()) throw ValidationError("");
        out = v->get<T>();
      } else {
        out = v->get<T>();
      }
    } catch (const std::exception&) {
      throw ValidationError(name(key) + ": wrong type");
    }
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!seen_.count(it.key())) throw ValidationError(name(it.key()) + ": unknown key");
    }
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

Point2 read_point(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ValidationError(where + ": expected [x, y]");
  return {j[0].get<double>(), j[1].get<double>()};
}

double read_rician(const json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string() && j.get<std::string>() == "inf")
    return std::numeric_limits<double>::infinity();
  throw ValidationError(where + ": expected a number or \"inf\"");
}

json rician_json(double k) { return std::isinf(k) ? json("inf") : json(k); }

std::string fmt10(double x) {
  if (std::isnan(x)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(line);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

auto record_key(const SweepRecord& r) {
  return std::make_tuple(r.trial, r.gamma_db, static_cast<int>(r.scheme),
                         static_cast<int>(r.receiver_type));
}

}  // namespace

const char* to_string(Scheme s) {
  switch (s) {
    case Scheme::Proposed: return "proposed";
    case Scheme::TransmitOnly: return "transmit_only";
    case Scheme::Separate: return "separate";
  }
  return "unknown";
}

Scheme parse_scheme(const std::string& s) {
  if (s == "proposed") return Scheme::Proposed;
  if (s == "transmit_only") return Scheme::TransmitOnly;
  if (s == "separate") return Scheme::Separate;
  throw ValidationError("unknown scheme \"" + s + "\"");
}

void ExperimentConfig::validate() const {
  if (dims.M < 1 || dims.N < 1 || dims.K < 1) throw ValidationError("dims: M, N, K must be >= 1");
  if (dims.N > dims.M)
    throw ValidationError("dims: N > M makes G G^H R_x singular, so the CRB is not defined");
  if (T < 1) throw ValidationError("dims.T must be >= 1");
  if (!std::isfinite(power_dbm)) throw ValidationError("power_dbm must be finite");
  if (!std::isfinite(noise.sigma_k_dbm) || !std::isfinite(noise.sigma_r_dbm))
    throw ValidationError("noise: levels must be finite");
  if (static_cast<int>(geometry.cus.size()) != dims.K)
    throw ValidationError("geometry.cus: need exactly K positions");
  geometry.validate();
  propagation.validate();
  if (gamma_grid_db.empty()) throw ValidationError("gamma_grid_db must not be empty");
  for (double g : gamma_grid_db)
    if (!std::isfinite(g)) throw ValidationError("gamma_grid_db: values must be finite");
  if (schemes.empty()) throw ValidationError("schemes must not be empty");
  if (receiver_types.empty()) throw ValidationError("receiver_types must not be empty");
  if (n_trials < 1) throw ValidationError("n_trials must be >= 1");
  ao.validate();
}

ExperimentConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
  ExperimentConfig c;
  Fields top(j, "");
  bool cus_given = false;
  if (const json* d = top.get("dims")) {
    Fields f(*d, "dims");
    f.read("M", c.dims.M);
    f.read("N", c.dims.N);
    f.read("K", c.dims.K);
    f.read("T", c.T);
    f.finish();
  }
  top.read("power_dbm", c.power_dbm);
  if (const json* n = top.get("noise")) {
    Fields f(*n, "noise");
    f.read("sigma_r_dbm", c.noise.sigma_r_dbm);
    f.read("sigma_k_dbm", c.noise.sigma_k_dbm);
    f.finish();
  }
  if (const json* g = top.get("geometry")) {
    Fields f(*g, "geometry");
    if (const json* p = f.get("bs")) c.geometry.bs = read_point(*p, "geometry.bs");
    if (const json* p = f.get("irs")) c.geometry.irs = read_point(*p, "geometry.irs");
    if (const json* p = f.get("cus")) {
      if (!p->is_array()) throw ValidationError("geometry.cus: expected an array");
      c.geometry.cus.clear();
      for (std::size_t i = 0; i < p->size(); ++i)
        c.geometry.cus.push_back(read_point((*p)[i], "geometry.cus[" + std::to_string(i) + "]"));
      cus_given = true;
    }
    f.finish();
  }
  if (const json* p = top.get("propagation")) {
    Fields f(*p, "propagation");
    auto& q = c.propagation;
    f.read("k0_db", q.k0_db);
    f.read("alpha_bs_irs", q.alpha_bs_irs);
    f.read("alpha_irs_cu", q.alpha_irs_cu);
    f.read("alpha_bs_cu", q.alpha_bs_cu);
    for (auto [key, dst] : {std::pair{"rician_bs_irs", &q.rician_bs_irs},
                            std::pair{"rician_bs_cu", &q.rician_bs_cu},
                            std::pair{"rician_irs_cu", &q.rician_irs_cu}}) {
      if (const json* v = f.get(key)) *dst = read_rician(*v, f.name(key));
    }
    f.read("shadow_std_db", q.shadow_std_db);
    f.finish();
  }
  top.read("gamma_grid_db", c.gamma_grid_db);
  if (const json* s = top.get("schemes")) {
    if (!s->is_array()) throw ValidationError("schemes: expected an array");
    c.schemes.clear();
    for (const auto& x : *s) {
      if (!x.is_string()) throw ValidationError("schemes: expected strings");
      c.schemes.push_back(parse_scheme(x.get<std::string>()));
    }
  }
  if (const json* s = top.get("receiver_types")) {
    if (!s->is_array()) throw ValidationError("receiver_types: expected an array");
    c.receiver_types.clear();
    for (const auto& x : *s) {
      if (!x.is_string()) throw ValidationError("receiver_types: expected strings");
      c.receiver_types.push_back(parse_receiver_type(x.get<std::string>()));
    }
  }
  top.read("n_trials", c.n_trials);
  top.read("base_seed", c.base_seed);
  if (const json* a = top.get("ao")) {
    Fields f(*a, "ao");
    f.read("max_outer_iters", c.ao.max_outer_iters);
    f.read("rel_tol", c.ao.rel_tol);
    f.read("n_randomizations", c.ao.n_randomizations);
    f.read("max_v_resamples", c.ao.max_v_resamples);
    f.finish();
  }
  top.finish();

  if (!cus_given) {
    if (c.dims.K > static_cast<int>(kDefaultGeometry.cus.size()))
      throw ValidationError("geometry.cus: K exceeds the default user positions; give cus explicitly");
    c.geometry.cus.assign(kDefaultGeometry.cus.begin(),
                          kDefaultGeometry.cus.begin() + std::max(c.dims.K, 0));
  }
  c.validate();
  return c;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error reading " + path);
  return ss.str();
}

ExperimentConfig load_config(const std::string& path) {
  return parse_config(read_file(path));
}

std::string serialize_config(const ExperimentConfig& c) {
  json j;
  j["dims"] = {{"M", c.dims.M}, {"N", c.dims.N}, {"K", c.dims.K}, {"T", c.T}};
  j["power_dbm"] = c.power_dbm;
  j["noise"] = {{"sigma_r_dbm", c.noise.sigma_r_dbm}, {"sigma_k_dbm", c.noise.sigma_k_dbm}};
  json cus = json::array();
  for (const auto& p : c.geometry.cus) cus.push_back({p.x, p.y});
  j["geometry"] = {{"bs", {c.geometry.bs.x, c.geometry.bs.y}},
                   {"irs", {c.geometry.irs.x, c.geometry.irs.y}},
                   {"cus", cus}};
  const auto& q = c.propagation;
  j["propagation"] = {{"k0_db", q.k0_db},
                      {"alpha_bs_irs", q.alpha_bs_irs},
                      {"alpha_irs_cu", q.alpha_irs_cu},
                      {"alpha_bs_cu", q.alpha_bs_cu},
                      {"rician_bs_irs", rician_json(q.rician_bs_irs)},
                      {"rician_bs_cu", rician_json(q.rician_bs_cu)},
                      {"rician_irs_cu", rician_json(q.rician_irs_cu)},
                      {"shadow_std_db", q.shadow_std_db}};
  j["gamma_grid_db"] = c.gamma_grid_db;
  json sch = json::array();
  for (auto s : c.schemes) sch.push_back(to_string(s));
  j["schemes"] = sch;
  json rt = json::array();
  for (auto t : c.receiver_types) rt.push_back(to_string(t));
  j["receiver_types"] = rt;
  j["n_trials"] = c.n_trials;
  j["base_seed"] = c.base_seed;
  j["ao"] = {{"max_outer_iters", c.ao.max_outer_iters},
             {"rel_tol", c.ao.rel_tol},
             {"n_randomizations", c.ao.n_randomizations},
             {"max_v_resamples", c.ao.max_v_resamples}};
  return j.dump(2) + "\n";
}

std::uint64_t trial_seed(std::uint64_t base_seed, int trial) {
  return stream_key(base_seed, {static_cast<std::uint64_t>(trial)});
}

ChannelSet trial_channels(const ExperimentConfig& cfg, int trial) {
  return gen_channels(cfg.geometry, cfg.propagation, cfg.dims, cfg.noise,
                      trial_seed(cfg.base_seed, trial));
}

SweepRecord run_cell(const ExperimentConfig& cfg, const ChannelSet& ch, int trial,
                     double gamma_db, Scheme scheme, ReceiverType type, bool timing) {
  SweepRecord r;
  r.seed = trial_seed(cfg.base_seed, trial);
  r.trial = trial;
  r.gamma_db = gamma_db;
  r.receiver_type = type;
  r.scheme = scheme;
  r.crb = r.crb_db = std::numeric_limits<double>::quiet_NaN();
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const auto params = SystemParams::from_db(cfg.power_dbm, gamma_db, cfg.dims.K, cfg.T);
    AoConfig ao = cfg.ao;
    ao.receiver_type = type;
    AoSolution s;
    switch (scheme) {
      case Scheme::Proposed: s = alternating_optimize(ch, params, ao, r.seed); break;
      case Scheme::TransmitOnly: s = benchmark_transmit_only(ch, params, ao, r.seed); break;
      case Scheme::Separate: s = benchmark_separate(ch, params, ao, r.seed); break;
    }
    r.status = to_string(s.status);
    r.outer_iters = s.outer_iters;
    r.crb_trace = s.crb_trace;
    if (s.status != AoStatus::Infeasible) {
      r.crb = s.final_crb();
      r.crb_db = 10.0 * std::log10(r.crb);
    }
  } catch (const std::exception& e) {
    spdlog::warn("trial {} gamma {} {} type {}: {}", trial, gamma_db, to_string(scheme),
                 to_string(type), e.what());
    r.status = "failed";
  }
  if (timing) {
    r.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0).count();
  }
  return r;
}

std::vector<SweepRecord> run_sweep(const ExperimentConfig& cfg, const SweepOptions& opt) {
  cfg.validate();
  struct Job {
    int trial;
    double gamma_db;
    Scheme scheme;
    ReceiverType type;
  };
  std::vector<Job> jobs;
  for (int t = 0; t < cfg.n_trials; ++t)
    for (double g : cfg.gamma_grid_db)
      for (auto s : cfg.schemes)
        for (auto rt : cfg.receiver_types) jobs.push_back({t, g, s, rt});

  std::vector<ChannelSet> channels(cfg.n_trials);
  std::vector<std::string> channel_error(cfg.n_trials);
  for (int t = 0; t < cfg.n_trials; ++t) {
    try {
      channels[t] = trial_channels(cfg, t);
    } catch (const std::exception& e) {
      channel_error[t] = e.what();
      spdlog::warn("trial {}: channel generation failed: {}", t, e.what());
    }
  }

  std::vector<SweepRecord> out(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      const auto& j = jobs[i];
      if (!channel_error[j.trial].empty()) {
        SweepRecord r;
        r.seed = trial_seed(cfg.base_seed, j.trial);
        r.trial = j.trial;
        r.gamma_db = j.gamma_db;
        r.scheme = j.scheme;
        r.receiver_type = j.type;
        r.status = "failed";
        r.crb = r.crb_db = std::numeric_limits<double>::quiet_NaN();
        out[i] = r;
        continue;
      }
      out[i] = run_cell(cfg, channels[j.trial], j.trial, j.gamma_db, j.scheme, j.type,
                        opt.timing);
      spdlog::info("trial {} gamma {} {} {}: {} crb {}", j.trial, j.gamma_db,
                   to_string(j.scheme), to_string(j.type), out[i].status, out[i].crb);
    }
  };
  const int n = std::clamp(opt.jobs, 1, static_cast<int>(std::max<std::size_t>(jobs.size(), 1)));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  std::stable_sort(out.begin(), out.end(), [](const SweepRecord& a, const SweepRecord& b) {
    return record_key(a) < record_key(b);
  });
  return out;
}

std::string records_to_csv(const std::vector<SweepRecord>& records) {
  std::ostringstream os;
  os << kCsvHeader << "\n";
  for (const auto& r : records) {
    os << r.seed << ',' << r.trial << ',' << fmt10(r.gamma_db) << ','
       << to_string(r.receiver_type) << ',' << to_string(r.scheme) << ',' << r.status << ','
       << fmt10(r.crb) << ',' << fmt10(r.crb_db) << ',' << r.outer_iters << ','
       << fmt10(r.wall_ms) << "\n";
  }
  return os.str();
}

std::vector<SweepRecord> records_from_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line != kCsvHeader)
    throw ValidationError("csv: missing or unexpected header");
  std::vector<SweepRecord> out;
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 10)
      throw ValidationError("csv line " + std::to_string(lineno) + ": expected 10 fields");
    try {
      SweepRecord r;
      r.seed = std::stoull(f[0]);
      r.trial = std::stoi(f[1]);
      r.gamma_db = std::stod(f[2]);
      r.receiver_type = parse_receiver_type(f[3]);
      r.scheme = parse_scheme(f[4]);
      r.status = f[5];
      const double nan = std::numeric_limits<double>::quiet_NaN();
      r.crb = f[6].empty() ? nan : std::stod(f[6]);
      r.crb_db = f[7].empty() ? nan : std::stod(f[7]);
      r.outer_iters = std::stoi(f[8]);
      r.wall_ms = f[9].empty() ? 0.0 : std::stod(f[9]);
      out.push_back(r);
    } catch (const ValidationError&) {
      throw;
    } catch (const std::exception&) {
      throw ValidationError("csv line " + std::to_string(lineno) + ": malformed number");
    }
  }
  return out;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream o(tmp, std::ios::binary | std::ios::trunc);
    if (!o) throw IoError("cannot write " + tmp);
    o << content;
    o.flush();
    if (!o) throw IoError("error writing " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot rename " + tmp + " to " + path);
  }
}

std::vector<Aggregate> summarize(const std::vector<SweepRecord>& records) {
  if (records.empty()) throw ValidationError("summarize: no records");
  std::map<std::tuple<double, int, int>, std::vector<const SweepRecord*>> groups;
  for (const auto& r : records)
    groups[{r.gamma_db, static_cast<int>(r.scheme), static_cast<int>(r.receiver_type)}]
        .push_back(&r);
  std::vector<Aggregate> out;
  for (const auto& [key, rs] : groups) {
    Aggregate a;
    a.gamma_db = std::get<0>(key);
    a.scheme = static_cast<Scheme>(std::get<1>(key));
    a.receiver_type = static_cast<ReceiverType>(std::get<2>(key));
    a.n = static_cast<int>(rs.size());
    std::vector<double> v;
    for (const auto* r : rs)
      if (r->feasible() && std::isfinite(r->crb_db)) v.push_back(r->crb_db);
    a.n_feasible = static_cast<int>(v.size());
    a.feasibility_rate = static_cast<double>(a.n_feasible) / a.n;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    if (v.empty()) {
      a.mean_crb_db = a.median_crb_db = nan;
    } else {
      double s = 0.0;
      for (double x : v) s += x;
      a.mean_crb_db = s / v.size();
      std::sort(v.begin(), v.end());
      const std::size_t m = v.size() / 2;
      a.median_crb_db = v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
      if (v.size() > 1) {
        double ss = 0.0;
        for (double x : v) ss += (x - a.mean_crb_db) * (x - a.mean_crb_db);
        a.ci_half_width = 1.96 * std::sqrt(ss / (v.size() - 1)) / std::sqrt(double(v.size()));
      }
    }
    out.push_back(a);
  }
  return out;
}

std::string summary_to_json(const std::vector<Aggregate>& aggs) {
  json arr = json::array();
  auto num = [](double x) { return std::isfinite(x) ? json(x) : json(nullptr); };
  for (const auto& a : aggs) {
    arr.push_back({{"gamma_db", a.gamma_db},
                   {"scheme", to_string(a.scheme)},
                   {"receiver_type", to_string(a.receiver_type)},
                   {"n", a.n},
                   {"n_feasible", a.n_feasible},
                   {"feasibility_rate", a.feasibility_rate},
                   {"mean_crb_db", num(a.mean_crb_db)},
                   {"median_crb_db", num(a.median_crb_db)},
                   {"ci_half_width", num(a.ci_half_width)}});
  }
  return json{{"aggregates", arr}}.dump(2) + "\n";
}

}  // namespace isac
