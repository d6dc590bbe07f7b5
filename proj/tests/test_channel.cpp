// Copyright 2026 The irs-isac Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <limits>

#include "doctest.h"
#include "isac/channel.hpp"
#include "isac/errors.hpp"
#include "isac/json_io.hpp"
#include "isac/rng.hpp"

using namespace isac;

namespace {

Geometry geometry_k(int k) {
  Geometry g;
  g.cus.resize(k);
  return g;
}

}  // namespace

TEST_CASE("path loss at the reference distance is K0") {
  CHECK(path_loss(1.0, 2.2, -30.0) == doctest::Approx(1e-3));
  CHECK(path_loss(1.0, 3.5, -30.0) == doctest::Approx(1e-3));
}

TEST_CASE("path loss decade rule and log-domain check") {
  CHECK(10.0 * std::log10(path_loss(10.0, 2.0, -30.0)) == doctest::Approx(-50.0));
  const double db = -30.0 - 10.0 * 3.5 * std::log10(50.0);
  CHECK(path_loss(50.0, 3.5, -30.0) == doctest::Approx(std::pow(10.0, db / 10.0)).epsilon(1e-12));
  CHECK_THROWS_AS(path_loss(0.0, 2.0, -30.0), ValidationError);
  CHECK_THROWS_AS(path_loss(-1.0, 2.0, -30.0), ValidationError);
}

TEST_CASE("noise conversion from dBm") {
  CHECK(dbm_to_watts(30.0) == doctest::Approx(1.0));
  CHECK(dbm_to_watts(-80.0) == doctest::Approx(1e-11));
}

TEST_CASE("infinite Rician factor leaves only the LoS part") {
  PropagationParams p;
  const double inf = std::numeric_limits<double>::infinity();
  p.rician_bs_irs = p.rician_bs_cu = p.rician_irs_cu = inf;
  p.shadow_std_db = 0.0;
  Geometry geo = geometry_k(1);
  ArrayDims dims{4, 1, 1};
  const auto ch = gen_channels(geo, p, dims, {}, 5);
  const double lg = path_loss(distance(geo.bs, geo.irs), p.alpha_bs_irs, p.k0_db);
  const double ld = path_loss(distance(geo.bs, geo.cus[0]), p.alpha_bs_cu, p.k0_db);
  const double lr = path_loss(distance(geo.irs, geo.cus[0]), p.alpha_irs_cu, p.k0_db);
  for (int c = 0; c < 4; ++c) CHECK(std::abs(ch.G(0, c)) == doctest::Approx(std::sqrt(lg)));
  for (int m = 0; m < 4; ++m) CHECK(std::abs(ch.h_d[0](m)) == doctest::Approx(std::sqrt(ld)));
  PropagationParams q = p;
  q.rician_bs_irs = 10.0;
  const auto ch4 = gen_channels(geo, q, {4, 4, 1}, {}, 5);
  for (int n = 0; n < 4; ++n) CHECK(std::abs(ch4.h_r[0](n)) == doctest::Approx(std::sqrt(lr)));
  // A pure LoS BS-IRS link has rank one.
  dims = {4, 2, 1};
  CHECK_THROWS_AS(gen_channels(geo, p, dims, {}, 5), NumericalError);
}

TEST_CASE("same seed gives bit-identical channels, different seeds differ") {
  const Geometry geo;
  const auto a = gen_channels(geo, {}, {}, {}, 42);
  const auto b = gen_channels(geo, {}, {}, {}, 42);
  const auto c = gen_channels(geo, {}, {}, {}, 43);
  CHECK(digest(a) == digest(b));
  CHECK(digest(a) != digest(c));
  CHECK(a.G == b.G);
}

TEST_CASE("user channels do not depend on how many users follow") {
  const auto one = gen_channels(geometry_k(1), {}, {8, 8, 1}, {}, 9);
  const auto three = gen_channels(geometry_k(3), {}, {8, 8, 3}, {}, 9);
  CHECK(one.G == three.G);
  CHECK(one.h_d[0] == three.h_d[0]);
  CHECK(one.h_r[0] == three.h_r[0]);
}

TEST_CASE("Rayleigh IRS-CU power matches the path loss (Monte Carlo)") {
  const Geometry geo = geometry_k(1);
  const PropagationParams p;
  const double l = path_loss(distance(geo.irs, geo.cus[0]), p.alpha_irs_cu, p.k0_db);
  double acc = 0.0;
  const int n = 10000;
  for (int s = 0; s < n; ++s) {
    const auto ch = gen_channels(geo, p, {2, 2, 1}, {}, static_cast<std::uint64_t>(s));
    acc += std::norm(ch.h_r[0](0));
  }
  CHECK(acc / n == doctest::Approx(l).epsilon(0.05));
}

TEST_CASE("Rician LoS / diffuse power split is kappa : 1") {
  const Geometry geo = geometry_k(1);
  PropagationParams p;
  p.shadow_std_db = 0.0;
  const double kappa = p.rician_bs_irs;
  const double l = path_loss(distance(geo.bs, geo.irs), p.alpha_bs_irs, p.k0_db);
  GenOptions los_only{true, false, true};
  GenOptions diffuse_only{false, true, true};
  double los_pow = 0.0, diff_pow = 0.0;
  const int n = 4000;
  for (int s = 0; s < n; ++s) {
    const auto a = gen_channels(geo, p, {2, 2, 1}, {}, s, diffuse_only);
    diff_pow += a.G.cwiseAbs2().mean();
  }
  // The LoS-only draw is deterministic, but the generator refuses rank-one G,
  // so its power is checked on the full draw minus the diffuse draw.
  for (int s = 0; s < 50; ++s) {
    const auto full = gen_channels(geo, p, {2, 2, 1}, {}, s);
    const auto d = gen_channels(geo, p, {2, 2, 1}, {}, s, diffuse_only);
    los_pow += (full.G - d.G).cwiseAbs2().mean();
  }
  (void)los_only;
  los_pow /= 50;
  diff_pow /= n;
  CHECK(los_pow == doctest::Approx(l * kappa / (1 + kappa)).epsilon(1e-12));
  CHECK(diff_pow == doctest::Approx(l / (1 + kappa)).epsilon(0.05));
  CHECK(los_pow / diff_pow == doctest::Approx(kappa).epsilon(0.05));
}

TEST_CASE("shadowing touches only the BS-CU links, as a common scalar") {
  const Geometry geo;
  const auto on = gen_channels(geo, {}, {}, {}, 3);
  const auto off = gen_channels(geo, {}, {}, {}, 3, {true, true, false});
  CHECK(on.G == off.G);
  for (int k = 0; k < 3; ++k) {
    CHECK(on.h_r[k] == off.h_r[k]);
    const CVector ratio = on.h_d[k].cwiseQuotient(off.h_d[k]);
    for (int m = 0; m < ratio.size(); ++m) {
      CHECK(std::abs(ratio(m) - ratio(0)) < 1e-12 * std::abs(ratio(0)));
      CHECK(std::abs(ratio(m).imag()) < 1e-12 * std::abs(ratio(0)));
    }
  }
}

TEST_CASE("invalid inputs are rejected") {
  Geometry g;
  g.cus[1] = g.bs;
  CHECK_THROWS_AS(gen_channels(g, {}, {}, {}, 1), ValidationError);
  CHECK_THROWS_AS(gen_channels(Geometry{}, {}, {4, 8, 3}, {}, 1), ValidationError);
  CHECK_THROWS_AS(gen_channels(Geometry{}, {}, {8, 8, 2}, {}, 1), ValidationError);
  PropagationParams p;
  p.alpha_bs_cu = 0.0;
  CHECK_THROWS_AS(p.validate(), ValidationError);
  p = {};
  p.rician_bs_cu = -1.0;
  CHECK_THROWS_AS(p.validate(), ValidationError);
}

TEST_CASE("channel sets round-trip through JSON bit for bit") {
  const auto ch = gen_channels(Geometry{}, {}, {}, {}, 77);
  const auto back = channel_from_json(channel_to_json(ch));
  CHECK(digest(back) == digest(ch));
  CHECK_THROWS_AS(channel_from_json("{\"G\": 3}"), ValidationError);
}

TEST_CASE("SplitMix64 reference output") {
  // First output of the canonical SplitMix64 generator seeded with 0.
  Stream s(0);
  CHECK(s.next_u64() == 0xE220A8397B1DCDAFULL);
  Stream u(1, {2, 3});
  for (int i = 0; i < 1000; ++i) {
    const double x = u.uniform();
    CHECK(x > 0.0);
    CHECK(x < 1.0);
  }
}
