// Copyright 2026 The irs-isac Authors
// SPDX-License-Identifier: Apache-2.0

#include "isac/beamforming.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <spdlog/spdlog.h>

#include "isac/errors.hpp"
#include "isac/rng.hpp"

namespace isac {

using sdp::HermBlockCoeff;
using sdp::HermConstraint;
using sdp::HermEntry;
using sdp::HermitianSdp;
using sdp::Sense;
using sdp::SdpStatus;

namespace {

enum : std::uint64_t {
  kInitPhases = 11,
  kReflectDraws = 12,
  kStage1Draws = 13,
};

constexpr int kMaxStage1Alternations = 20;
// Solves that stall short of the solver tolerance are still used when every
// residual is below this level.
constexpr double kAcceptTolerance = 1e-6;
constexpr cdouble kI{0.0, 1.0};

// Normalized problem data, see the header comment.
struct Normalized {
  double P0 = 1.0;
  double noise = 1.0;      // max_k sigma_k^2
  double bound = 1.0;      // sensing-only optimum, physical units
  CMatrix Gw;              // whitened sensing matrix
  RVector weight;          // objective weights on diag(S22), sum to one
  RVector sig;             // sigma_k^2 / noise
  std::vector<CVector> h;  // h_k sqrt(P0 / noise)

  Normalized(const ChannelSet& ch, const SystemParams& p,
             const std::vector<CVector>& h_phys) {
    P0 = p.P0;
    noise = ch.sigma_k2.maxCoeff();
    // G = U diag(sqrt(s)) V^H. With B = T (G R G^H) T^H and
    // T = sqrt(c) diag(s^{-1/4}) U^H, c = sum s^{-1/2}:
    //   tr((G R G^H)^{-1}) = c * sum_i s_i^{-1/2} (B^{-1})_ii
    // and B = I at the sensing-only optimum for P0 = 1.
    Eigen::JacobiSVD<CMatrix> svd(ch.G, Eigen::ComputeThinV);
    const RVector sv = svd.singularValues();
    if (!(sv(sv.size() - 1) > 1e-10 * sv(0)))
      throw NearSingular("beamforming: G G^H is singular");
    const RVector isq = sv.cwiseInverse();  // s^{-1/2}
    const double c = isq.sum();
    weight = isq / c;
    Gw = std::sqrt(c) * sv.cwiseSqrt().asDiagonal() * svd.matrixV().adjoint();
    bound = c * c / P0;
    sig = ch.sigma_k2 / noise;
    const double sc = std::sqrt(P0 / noise);
    for (const auto& hk : h_phys) h.push_back(hk * sc);
  }
};

HermEntry entry(int r, int c, cdouble v) { return HermEntry{r, c, v}; }

// Appends S11 = Gn (sum_b X_b + t * T) Gn^H, S12 = I and the objective
// sum_i weight_i (S22)_ii for the epigraph block S (2N x 2N). `xs` are the
// blocks entering R_x; `tmat` (may be null) is the M x M matrix multiplying
// free scalar 0.
void add_epigraph(HermitianSdp& p, const CMatrix& Gn, const RVector& weight,
                  const std::vector<int>& xs, int s, const CMatrix* tmat) {
  const int N = static_cast<int>(Gn.rows());
  CMatrix T;
  if (tmat) T = Gn * (*tmat) * Gn.adjoint();
  for (int a = 0; a < N; ++a) {
    const CVector ca = Gn.row(a).adjoint();
    for (int b = a; b < N; ++b) {
      const CVector cb = Gn.row(b).adjoint();
      // (Gn X Gn^H)_ab = tr(X B), B = c_b c_a^H.
      const CMatrix B = cb * ca.adjoint();
      const CMatrix Bh = B.adjoint();
      const CMatrix Are = 0.5 * (B + Bh);
      HermConstraint re;
      re.blocks.push_back(HermBlockCoeff::sparse(s, {entry(a, b, a == b ? 1.0 : 0.5)}));
      for (int x : xs) re.blocks.push_back(HermBlockCoeff::dense(x, -Are));
      if (tmat) re.free.push_back({0, -T(a, b).real()});
      p.constraints.push_back(std::move(re));
      if (a == b) continue;
      const CMatrix Aim = 0.5 * (-kI * B + kI * Bh);
      HermConstraint im;
      im.blocks.push_back(HermBlockCoeff::sparse(s, {entry(a, b, 0.5 * kI)}));
      for (int x : xs) im.blocks.push_back(HermBlockCoeff::dense(x, -Aim));
      if (tmat) im.free.push_back({0, -T(a, b).imag()});
      p.constraints.push_back(std::move(im));
    }
  }
  for (int a = 0; a < N; ++a) {
    for (int b = 0; b < N; ++b) {
      HermConstraint re, im;
      re.blocks.push_back(HermBlockCoeff::sparse(s, {entry(a, N + b, 0.5)}));
      re.rhs = a == b ? 1.0 : 0.0;
      im.blocks.push_back(HermBlockCoeff::sparse(s, {entry(a, N + b, 0.5 * kI)}));
      p.constraints.push_back(std::move(re));
      p.constraints.push_back(std::move(im));
    }
  }
  std::vector<HermEntry> obj;
  for (int a = 0; a < N; ++a) obj.push_back(entry(N + a, N + a, weight(a)));
  p.objective.push_back(HermBlockCoeff::sparse(s, std::move(obj)));
}

bool usable(const sdp::SdpSolution& s) {
  if (s.status == SdpStatus::Optimal) return true;
  return s.status == SdpStatus::NumericalFailure &&
         std::max({s.primal_residual, s.dual_residual, s.gap}) <= kAcceptTolerance;
}

HermBlockCoeff identity_coeff(int block, int dim, double scale) {
  std::vector<HermEntry> e;
  for (int i = 0; i < dim; ++i) e.push_back(entry(i, i, scale));
  return HermBlockCoeff::sparse(block, std::move(e));
}

}  // namespace

// ---------------------------------------------------------------------------

void AoConfig::validate() const {
  if (max_outer_iters < 1) throw ValidationError("ao.max_outer_iters must be >= 1");
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw ValidationError("ao.rel_tol must lie in (0, 1)");
  if (n_randomizations < 1) throw ValidationError("ao.n_randomizations must be >= 1");
  if (max_v_resamples < 1) throw ValidationError("ao.max_v_resamples must be >= 1");
}

const char* to_string(AoStatus s) {
  switch (s) {
    case AoStatus::Converged: return "converged";
    case AoStatus::IterCap: return "iter_cap";
    case AoStatus::Infeasible: return "infeasible";
  }
  return "unknown";
}

double AoSolution::final_crb() const {
  if (status == AoStatus::Infeasible || crb_trace.empty())
    return std::numeric_limits<double>::infinity();
  return crb_trace.back();
}

double sensing_only_bound(const CMatrix& G, double P0) {
  const auto ev = herm_eig(HermitianMatrix(G * G.adjoint())).values;
  if (!(ev.minCoeff() > kPdTolerance * ev.maxCoeff()))
    throw NearSingular("sensing_only_bound: G G^H is singular");
  const double s = ev.cwiseSqrt().cwiseInverse().sum();
  return s * s / P0;
}

ReflectCoeffs random_phases(int n, std::uint64_t seed, int attempt) {
  Stream s(seed, {kInitPhases, static_cast<std::uint64_t>(attempt)});
  RVector ph(n);
  for (int i = 0; i < n; ++i) ph(i) = 2.0 * std::numbers::pi * s.uniform();
  return ReflectCoeffs(std::move(ph));
}

RankOne rank_one_reconstruct(const std::vector<CMatrix>& W, const CMatrix& R0,
                             const std::vector<CVector>& h) {
  if (W.size() != h.size()) throw ValidationError("rank_one_reconstruct: K mismatch");
  RankOne out;
  out.R0 = R0;
  for (std::size_t k = 0; k < W.size(); ++k) {
    const CVector Wh = W[k] * h[k];
    const double q = h[k].dot(Wh).real();
    const double tr = W[k].diagonal().real().sum();
    if (!(tr > 0.0) || !(q > kPdTolerance * h[k].squaredNorm() * tr)) {
      throw NumericalError("rank_one_reconstruct: degenerate beam for user " +
                           std::to_string(k));
    }
    CVector wk = Wh / std::sqrt(q);
    out.R0 += W[k] - wk * wk.adjoint();
    out.w.push_back(std::move(wk));
  }
  out.R0 = 0.5 * (out.R0 + out.R0.adjoint()).eval();
  return out;
}

TransmitResult transmit_step(const ChannelSet& ch, const ReflectCoeffs& v,
                             const SystemParams& params, ReceiverType type) {
  const int M = ch.M(), N = ch.N(), K = ch.K();
  params.validate(K);
  const auto h = combined_channel(ch, v);
  TransmitResult out;
  // Necessary condition: even all power on user k alone must meet Gamma_k.
  for (int k = 0; k < K; ++k) {
    if (params.P0 * h[k].squaredNorm() < params.gamma(k) * ch.sigma_k2(k)) {
      out.sdp_status = SdpStatus::Infeasible;
      return out;
    }
  }
  const Normalized nz(ch, params, h);

  // Blocks: W_0..W_{K-1}, R0, S.
  HermitianSdp p;
  for (int k = 0; k < K; ++k) p.blocks.push_back({"W" + std::to_string(k), M});
  const int r0 = K, s = K + 1;
  p.blocks.push_back({"R0", M});
  p.blocks.push_back({"S", 2 * N});
  std::vector<int> xs;
  for (int k = 0; k <= K; ++k) xs.push_back(k);
  add_epigraph(p, nz.Gw, nz.weight, xs, s, nullptr);

  for (int k = 0; k < K; ++k) {
    const CMatrix Hk = nz.h[k] * nz.h[k].adjoint();
    HermConstraint c;
    for (int i = 0; i < K; ++i) {
      c.blocks.push_back(HermBlockCoeff::dense(i, i == k ? CMatrix(Hk / params.gamma(k))
                                                         : CMatrix(-Hk)));
    }
    if (type == ReceiverType::I) c.blocks.push_back(HermBlockCoeff::dense(r0, -Hk));
    c.rhs = nz.sig(k);
    c.sense = Sense::GreaterEqual;
    p.constraints.push_back(std::move(c));
  }
  HermConstraint pw;
  for (int k = 0; k <= K; ++k) pw.blocks.push_back(identity_coeff(k, M, -1.0));
  pw.rhs = -1.0;
  pw.sense = Sense::GreaterEqual;
  p.constraints.push_back(std::move(pw));

  const auto sol = sdp::solve_hermitian(p);
  out.sdp_status = sol.raw.status;
  if (sol.raw.status == SdpStatus::Infeasible) return out;
  if (!usable(sol.raw)) {
    spdlog::debug("transmit_step: {} after {} iterations (rp {:.2e} rd {:.2e} gap {:.2e})",
                  sdp::to_string(sol.raw.status), sol.raw.iterations,
                  sol.raw.primal_residual, sol.raw.dual_residual, sol.raw.gap);
    throw NumericalError(std::string("transmit_step: SDP solver returned ") +
                         sdp::to_string(sol.raw.status));
  }
  for (int k = 0; k < K; ++k) out.W_relaxed.push_back(params.P0 * sol.blocks[k]);
  out.R0_relaxed = params.P0 * sol.blocks[r0];
  out.objective = sol.raw.primal_objective * nz.bound;
  // Single user: W1 + R0 is itself optimal for the relaxation with R0 = 0
  // under either receiver type, so reconstruct from the folded covariance
  // (h^H R0* h = 0 afterwards and both types yield the same design).
  auto r1 = K == 1 ? rank_one_reconstruct({out.W_relaxed[0] + out.R0_relaxed},
                                          CMatrix::Zero(M, M), h)
                   : rank_one_reconstruct(out.W_relaxed, out.R0_relaxed, h);
  out.design.w = std::move(r1.w);
  out.design.R0 = std::move(r1.R0);
  out.feasible = true;
  return out;
}

ReflectResult reflective_step(const ChannelSet& ch, const TransmitDesign& d,
                              const ReflectCoeffs& incumbent,
                              const SystemParams& params, ReceiverType type,
                              int n_randomizations, std::uint64_t rng_key) {
  const int N = ch.N(), K = ch.K();
  const double noise = ch.sigma_k2.maxCoeff();
  const auto lq = reflect_quadratics(ch, d);

  auto slack = [&](const ReflectCoeffs& v) {
    return min_sinr_slack(d, combined_channel(ch, v), ch.sigma_k2, params.gamma, type);
  };

  ReflectResult out;
  out.v = incumbent;
  out.incumbent_slack = slack(incumbent);
  out.min_slack = out.incumbent_slack;

  // Blocks: V ((N+1) x (N+1)), beta_0..beta_{K-1} (1 x 1).
  HermitianSdp p;
  p.blocks.push_back({"V", N + 1});
  for (int k = 0; k < K; ++k) p.blocks.push_back({"beta" + std::to_string(k), 1});
  for (int n = 0; n <= N; ++n) {
    HermConstraint c;
    c.blocks.push_back(HermBlockCoeff::sparse(0, {entry(n, n, 1.0)}));
    c.rhs = 1.0;
    p.constraints.push_back(std::move(c));
  }
  for (int k = 0; k < K; ++k) {
    CMatrix A = lq.Q[k][k] / params.gamma(k);
    for (int i = 0; i < K; ++i)
      if (i != k) A -= lq.Q[k][i];
    if (type == ReceiverType::I) A -= lq.Q0[k];
    HermConstraint c;
    c.blocks.push_back(HermBlockCoeff::dense(0, A / noise));
    c.blocks.push_back(HermBlockCoeff::sparse(1 + k, {entry(0, 0, -1.0)}));
    c.rhs = ch.sigma_k2(k) / noise;
    c.sense = Sense::GreaterEqual;
    p.constraints.push_back(std::move(c));
    p.objective.push_back(HermBlockCoeff::sparse(1 + k, {entry(0, 0, -1.0)}));
  }

  const auto sol = sdp::solve_hermitian(p);
  out.sdp_status = sol.raw.status;
  if (!usable(sol.raw)) {
    spdlog::debug("reflective_step: SDR status {}, keeping incumbent",
                  sdp::to_string(sol.raw.status));
    return out;
  }
  const HermitianMatrix V(sol.blocks[0]);

  auto consider = [&](const CVector& r) {
    if (std::abs(r(N)) == 0.0) return;
    CVector u(N);
    for (int n = 0; n < N; ++n) u(n) = r(n) / r(N);
    const auto cand = ReflectCoeffs::from_vector(u);
    const double sl = slack(cand);
    if (sl > out.min_slack) {
      out.min_slack = sl;
      out.v = cand;
    }
  };

  const auto ed = herm_eig(V);
  consider(ed.vectors.col(N));
  const CMatrix F = psd_factor(V);
  Stream rs(rng_key);
  CVector z(N + 1);
  for (int t = 0; t < n_randomizations; ++t) {
    for (int n = 0; n <= N; ++n) z(n) = rs.cnormal();
    consider(F * z);
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct Attempt {
  bool ok = false;
  TransmitResult tr;
  std::string error;
};

Attempt try_transmit(const ChannelSet& ch, const ReflectCoeffs& v,
                     const SystemParams& params, ReceiverType type) {
  Attempt a;
  try {
    a.tr = transmit_step(ch, v, params, type);
    a.ok = a.tr.feasible;
  } catch (const NumericalError& e) {
    a.error = e.what();
    spdlog::debug("transmit step failed: {}", a.error);
  }
  return a;
}

// First feasible transmit step over the random-phase resample sequence.
bool initial_design(const ChannelSet& ch, const SystemParams& params,
                    const AoConfig& ao, std::uint64_t seed, ReflectCoeffs& v,
                    TransmitDesign& d) {
  for (int attempt = 0; attempt < ao.max_v_resamples; ++attempt) {
    const auto cand = random_phases(ch.N(), seed, attempt);
    auto a = try_transmit(ch, cand, params, ao.receiver_type);
    if (a.ok) {
      v = cand;
      d = std::move(a.tr.design);
      return true;
    }
  }
  return false;
}

}  // namespace

AoSolution alternating_optimize(const ChannelSet& ch, const SystemParams& params,
                                const AoConfig& ao, std::uint64_t seed) {
  ao.validate();
  params.validate(ch.K());
  AoSolution sol;
  if (!initial_design(ch, params, ao, seed, sol.v, sol.design)) {
    // No random draw works: start from the minimum-power phases instead.
    const auto pm = min_power_beams(ch, params, ao, seed);
    auto a = pm.feasible && pm.power <= params.P0
                 ? try_transmit(ch, pm.v, params, ao.receiver_type)
                 : Attempt{};
    if (!a.ok) {
      sol.status = AoStatus::Infeasible;
      return sol;
    }
    sol.v = pm.v;
    sol.design = std::move(a.tr.design);
  }
  double best = crb(ch.G, sol.design.rx(), ch.sigma_r2, params.T);
  sol.crb_trace.push_back(best);
  // With one user the transmit problem has the same feasible phases for
  // both receiver types, so the phase search may ignore the sensing term.
  const ReceiverType reflect_type = ch.K() == 1 ? ReceiverType::II : ao.receiver_type;
  sol.status = AoStatus::IterCap;
  for (int it = 1; it <= ao.max_outer_iters; ++it) {
    sol.outer_iters = it;
    const auto key = stream_key(seed, {kReflectDraws, static_cast<std::uint64_t>(it)});
    const auto rf = reflective_step(ch, sol.design, sol.v, params, reflect_type,
                                    ao.n_randomizations, key);
    auto a = try_transmit(ch, rf.v, params, ao.receiver_type);
    double next = best;
    if (a.ok) {
      const double c = crb(ch.G, a.tr.design.rx(), ch.sigma_r2, params.T);
      if (c <= best) {
        next = c;
        sol.design = std::move(a.tr.design);
        sol.v = rf.v;
      }
    }
    sol.crb_trace.push_back(next);
    const double dec = (best - next) / best;
    best = next;
    spdlog::debug("ao iter {}: crb {:.6e} (rel decrease {:.3e})", it, next, dec);
    if (dec < ao.rel_tol) {
      sol.status = AoStatus::Converged;
      break;
    }
  }
  return sol;
}

AoSolution benchmark_transmit_only(const ChannelSet& ch,
                                   const SystemParams& params,
                                   const AoConfig& ao, std::uint64_t seed) {
  ao.validate();
  params.validate(ch.K());
  AoSolution sol;
  sol.v = random_phases(ch.N(), seed, 0);
  auto a = try_transmit(ch, sol.v, params, ao.receiver_type);
  if (!a.ok) {
    sol.status = AoStatus::Infeasible;
    return sol;
  }
  sol.design = std::move(a.tr.design);
  sol.crb_trace.push_back(crb(ch.G, sol.design.rx(), ch.sigma_r2, params.T));
  sol.status = AoStatus::Converged;
  return sol;
}

namespace {

// min sum ||w_k||^2 under sensing-free SINR constraints for fixed phases.
// Returns false when infeasible or on solver failure.
bool power_min_step(const ChannelSet& ch, const ReflectCoeffs& v,
                    const SystemParams& params, std::vector<CVector>& w) {
  const int M = ch.M(), K = ch.K();
  const auto h = combined_channel(ch, v);
  const Normalized nz(ch, params, h);
  HermitianSdp p;
  for (int k = 0; k < K; ++k) {
    p.blocks.push_back({"W" + std::to_string(k), M});
    p.objective.push_back(identity_coeff(k, M, 1.0));
  }
  for (int k = 0; k < K; ++k) {
    const CMatrix Hk = nz.h[k] * nz.h[k].adjoint();
    HermConstraint c;
    for (int i = 0; i < K; ++i) {
      c.blocks.push_back(HermBlockCoeff::dense(i, i == k ? CMatrix(Hk / params.gamma(k))
                                                         : CMatrix(-Hk)));
    }
    c.rhs = nz.sig(k);
    c.sense = Sense::GreaterEqual;
    p.constraints.push_back(std::move(c));
  }
  const auto sol = sdp::solve_hermitian(p);
  if (!usable(sol.raw)) {
    spdlog::debug("power_min_step: SDP status {}", sdp::to_string(sol.raw.status));
    return false;
  }
  std::vector<CMatrix> W;
  for (int k = 0; k < K; ++k) W.push_back(params.P0 * sol.blocks[k]);
  try {
    w = rank_one_reconstruct(W, CMatrix::Zero(M, M), h).w;
  } catch (const NumericalError& e) {
    spdlog::debug("power_min_step: {}", e.what());
    return false;
  }
  return true;
}

double beam_power(const std::vector<CVector>& w) {
  double s = 0.0;
  for (const auto& x : w) s += x.squaredNorm();
  return s;
}

}  // namespace

PowerMinResult min_power_beams(const ChannelSet& ch, const SystemParams& params,
                               const AoConfig& ao, std::uint64_t seed) {
  ao.validate();
  params.validate(ch.K());
  PowerMinResult out;
  for (int attempt = 0; attempt < ao.max_v_resamples && !out.feasible; ++attempt) {
    const auto v = random_phases(ch.N(), seed, attempt);
    if (power_min_step(ch, v, params, out.w)) {
      out.feasible = true;
      out.v = v;
    }
  }
  if (!out.feasible) return out;
  out.power = beam_power(out.w);
  for (int it = 1; it <= kMaxStage1Alternations; ++it) {
    out.alternations = it;
    TransmitDesign d;
    d.w = out.w;
    d.R0 = CMatrix::Zero(ch.M(), ch.M());
    const auto key = stream_key(seed, {kStage1Draws, static_cast<std::uint64_t>(it)});
    const auto rf = reflective_step(ch, d, out.v, params, ReceiverType::II,
                                    ao.n_randomizations, key);
    std::vector<CVector> w;
    double next = out.power;
    if (power_min_step(ch, rf.v, params, w)) {
      const double pw = beam_power(w);
      if (pw <= out.power) {
        next = pw;
        out.w = std::move(w);
        out.v = rf.v;
      }
    }
    const double dec = (out.power - next) / out.power;
    out.power = next;
    if (dec < ao.rel_tol) break;
  }
  return out;
}

AoSolution benchmark_separate(const ChannelSet& ch, const SystemParams& params,
                              const AoConfig& ao, std::uint64_t seed) {
  const int M = ch.M(), N = ch.N(), K = ch.K();
  AoSolution sol;
  const auto pm = min_power_beams(ch, params, ao, seed);
  sol.outer_iters = pm.alternations;
  if (!pm.feasible || pm.power > params.P0) {
    sol.status = AoStatus::Infeasible;
    return sol;
  }
  sol.v = pm.v;
  const auto h = combined_channel(ch, pm.v);
  const Normalized nz(ch, params, h);

  std::vector<CVector> wn;
  CMatrix Wbar = CMatrix::Zero(M, M);
  for (const auto& w : pm.w) {
    wn.push_back(w / std::sqrt(params.P0));
    Wbar += wn.back() * wn.back().adjoint();
  }

  // Blocks: R0, S; free scalar t.
  HermitianSdp p;
  p.blocks.push_back({"R0", M});
  p.blocks.push_back({"S", 2 * N});
  p.free_vars = 1;
  p.objective_free = RVector::Zero(1);
  add_epigraph(p, nz.Gw, nz.weight, {0}, 1, &Wbar);
  for (int k = 0; k < K; ++k) {
    double c = std::norm(nz.h[k].dot(wn[k])) / params.gamma(k);
    for (int i = 0; i < K; ++i)
      if (i != k) c -= std::norm(nz.h[k].dot(wn[i]));
    HermConstraint row;
    row.free.push_back({0, c});
    if (ao.receiver_type == ReceiverType::I) {
      row.blocks.push_back(HermBlockCoeff::dense(0, -(nz.h[k] * nz.h[k].adjoint())));
    }
    row.rhs = nz.sig(k);
    row.sense = Sense::GreaterEqual;
    p.constraints.push_back(std::move(row));
  }
  HermConstraint pw;
  pw.blocks.push_back(identity_coeff(0, M, -1.0));
  pw.free.push_back({0, -Wbar.diagonal().real().sum()});
  pw.rhs = -1.0;
  pw.sense = Sense::GreaterEqual;
  p.constraints.push_back(std::move(pw));
  HermConstraint tmin;
  tmin.free.push_back({0, 1.0});
  tmin.rhs = 1.0;
  tmin.sense = Sense::GreaterEqual;
  p.constraints.push_back(std::move(tmin));

  const auto res = sdp::solve_hermitian(p);
  if (!usable(res.raw)) {
    spdlog::debug("benchmark_separate: stage-2 SDP status {}",
                  sdp::to_string(res.raw.status));
    sol.status = AoStatus::Infeasible;
    return sol;
  }
  const double t = std::max(res.raw.free(0), 1.0);
  for (const auto& w : pm.w) sol.design.w.push_back(std::sqrt(t) * w);
  sol.design.R0 = params.P0 * res.blocks[0];
  sol.crb_trace.push_back(crb(ch.G, sol.design.rx(), ch.sigma_r2, params.T));
  sol.status = AoStatus::Converged;
  return sol;
}

}  // namespace isac
