// Copyright 2026 The irs-isac Authors
// SPDX-License-Identifier: Apache-2.0

#include "isac/channel.hpp"

#include <cmath>
#include <cstring>
#include <numbers>
#include <string>

#include "isac/errors.hpp"
#include "isac/rng.hpp"

namespace isac {

namespace {

// Sub-stream ids.
enum : std::uint64_t {
  kLinkBsIrs = 1,
  kLinkBsCu = 2,
  kLinkIrsCu = 3,
  kLinkShadow = 4,
};

struct RicianWeights {
  double los;
  double nlos;
};

RicianWeights rician(double kappa, const GenOptions& opt) {
  RicianWeights w{};
  if (std::isinf(kappa)) {
    w = {1.0, 0.0};
  } else {
    w = {std::sqrt(kappa / (1.0 + kappa)), std::sqrt(1.0 / (1.0 + kappa))};
  }
  if (!opt.los) w.los = 0.0;
  if (!opt.diffuse) w.nlos = 0.0;
  return w;
}

double angle_to(const Point2& from, const Point2& to) {
  return std::atan2(to.y - from.y, to.x - from.x);
}

}  // namespace

double distance(const Point2& a, const Point2& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

void Geometry::validate() const {
  std::vector<Point2> all{bs, irs};
  all.insert(all.end(), cus.begin(), cus.end());
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      if (!(distance(all[i], all[j]) > 0.0)) {
        throw ValidationError("geometry: nodes " + std::to_string(i) + " and " +
                              std::to_string(j) + " coincide");
      }
    }
  }
}

void PropagationParams::validate() const {
  if (!(alpha_bs_irs > 0 && alpha_irs_cu > 0 && alpha_bs_cu > 0)) {
    throw ValidationError("propagation: path-loss exponents must be > 0");
  }
  if (!(rician_bs_irs >= 0 && rician_bs_cu >= 0 && rician_irs_cu >= 0)) {
    throw ValidationError("propagation: Rician factors must be >= 0");
  }
  if (!(shadow_std_db >= 0)) {
    throw ValidationError("propagation: shadow_std_db must be >= 0");
  }
  if (!std::isfinite(k0_db)) throw ValidationError("propagation: bad k0_db");
}

void ChannelSet::validate() const {
  const int m = M(), n = N(), k = K();
  if (m < 1 || n < 1 || k < 1) throw ValidationError("channels: empty dimension");
  if (static_cast<int>(h_r.size()) != k || sigma_k2.size() != k) {
    throw ValidationError("channels: per-user arrays disagree on K");
  }
  for (int i = 0; i < k; ++i) {
    if (h_d[i].size() != m || h_r[i].size() != n) {
      throw ValidationError("channels: user vector has wrong length");
    }
  }
  if (!(sigma_k2.minCoeff() > 0.0) || !(sigma_r2 > 0.0)) {
    throw ValidationError("channels: noise powers must be > 0");
  }
  if (n > m) throw ValidationError("channels: N > M, G cannot have rank N");
  Eigen::JacobiSVD<CMatrix> svd(G);
  const auto sv = svd.singularValues();
  if (!(sv(n - 1) > 1e-10 * sv(0))) {
    throw ValidationError("channels: G is rank deficient");
  }
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double path_loss(double d, double alpha, double k0_db) {
  if (!(d > 0.0)) throw ValidationError("path_loss: distance must be > 0");
  return db_to_linear(k0_db) * std::pow(d, -alpha);
}

CVector ula_response(int n, double theta) {
  CVector a(n);
  const double s = std::numbers::pi * std::sin(theta);
  for (int m = 0; m < n; ++m) a(m) = std::polar(1.0, s * m);
  return a;
}

ChannelSet gen_channels(const Geometry& geom, const PropagationParams& params,
                        const ArrayDims& dims, const NoiseParams& noise,
                        std::uint64_t seed, const GenOptions& opt) {
  geom.validate();
  params.validate();
  const int M = dims.M, N = dims.N, K = dims.K;
  if (M < 1 || N < 1 || K < 1) throw ValidationError("gen_channels: bad dims");
  if (N > M) throw ValidationError("gen_channels: N > M leaves G rank deficient");
  if (static_cast<int>(geom.cus.size()) != K) {
    throw ValidationError("gen_channels: geometry has " +
                          std::to_string(geom.cus.size()) + " users, K = " +
                          std::to_string(K));
  }

  ChannelSet ch;
  ch.sigma_k2 = RVector::Constant(K, dbm_to_watts(noise.sigma_k_dbm));
  ch.sigma_r2 = dbm_to_watts(noise.sigma_r_dbm);

  // BS -> IRS.
  {
    const double l = path_loss(distance(geom.bs, geom.irs), params.alpha_bs_irs,
                               params.k0_db);
    const auto w = rician(params.rician_bs_irs, opt);
    const CVector a_irs = ula_response(N, angle_to(geom.irs, geom.bs));
    const CVector a_bs = ula_response(M, angle_to(geom.bs, geom.irs));
    const CMatrix los = a_irs * a_bs.adjoint();
    bool ok = false;
    for (std::uint64_t attempt = 0; attempt < 10 && !ok; ++attempt) {
      Stream s(seed, {kLinkBsIrs, attempt});
      CMatrix nlos(N, M);
      for (int c = 0; c < M; ++c)
        for (int r = 0; r < N; ++r) nlos(r, c) = s.cnormal();
      ch.G = std::sqrt(l) * (w.los * los + w.nlos * nlos);
      Eigen::JacobiSVD<CMatrix> svd(ch.G);
      const auto sv = svd.singularValues();
      ok = sv(0) > 0.0 && sv(N - 1) > 1e-10 * sv(0);
    }
    if (!ok) throw NumericalError("gen_channels: G rank deficient after 10 draws");
  }

  for (int k = 0; k < K; ++k) {
    const auto uk = static_cast<std::uint64_t>(k);
    // BS -> CU k, with shadowing.
    {
      const double l = path_loss(distance(geom.bs, geom.cus[k]),
                                 params.alpha_bs_cu, params.k0_db);
      const auto w = rician(params.rician_bs_cu, opt);
      const CVector los = ula_response(M, angle_to(geom.bs, geom.cus[k]));
      Stream s(seed, {kLinkBsCu, uk});
      CVector nlos(M);
      for (int m = 0; m < M; ++m) nlos(m) = s.cnormal();
      double shadow = 1.0;
      if (opt.shadowing && params.shadow_std_db > 0.0) {
        Stream sh(seed, {kLinkShadow, uk});
        shadow = std::pow(10.0, params.shadow_std_db * sh.normal() / 20.0);
      }
      ch.h_d.push_back(shadow * std::sqrt(l) * (w.los * los + w.nlos * nlos));
    }
    // IRS -> CU k.
    {
      const double l = path_loss(distance(geom.irs, geom.cus[k]),
                                 params.alpha_irs_cu, params.k0_db);
      const auto w = rician(params.rician_irs_cu, opt);
      const CVector los = ula_response(N, angle_to(geom.irs, geom.cus[k]));
      Stream s(seed, {kLinkIrsCu, uk});
      CVector nlos(N);
      for (int n = 0; n < N; ++n) nlos(n) = s.cnormal();
      ch.h_r.push_back(std::sqrt(l) * (w.los * los + w.nlos * nlos));
    }
  }
  return ch;
}

std::uint64_t digest(const ChannelSet& ch) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](const void* p, std::size_t n) {
    const auto* b = static_cast<const unsigned char*>(p);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= b[i];
      h *= 0x100000001b3ULL;
    }
  };
  const int dims[3] = {ch.M(), ch.N(), ch.K()};
  feed(dims, sizeof dims);
  feed(ch.G.data(), sizeof(cdouble) * ch.G.size());
  for (const auto& v : ch.h_d) feed(v.data(), sizeof(cdouble) * v.size());
  for (const auto& v : ch.h_r) feed(v.data(), sizeof(cdouble) * v.size());
  feed(ch.sigma_k2.data(), sizeof(double) * ch.sigma_k2.size());
  feed(&ch.sigma_r2, sizeof ch.sigma_r2);
  return h;
}

}  // namespace isac
