// Copyright 2026 The irs-isac Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <random>

#include "doctest.h"
#include "isac/errors.hpp"
#include "isac/sensing.hpp"
#include "test_util.hpp"

using namespace isac;
using isac::testing::random_complex;

namespace {

struct Fixture {
  ChannelSet ch;
  TransmitDesign d;
  ReflectCoeffs v;
};

Fixture make(std::uint64_t s, int M = 6, int N = 4, int K = 2) {
  std::mt19937_64 g(s);
  Fixture f;
  f.ch.G = random_complex(g, N, M);
  for (int k = 0; k < K; ++k) {
    f.ch.h_d.push_back(random_complex(g, M, 1));
    f.ch.h_r.push_back(random_complex(g, N, 1));
    f.d.w.push_back(0.3 * random_complex(g, M, 1));
  }
  f.ch.sigma_k2 = RVector::Ones(K);
  f.ch.sigma_r2 = 0.05;
  const CMatrix a = random_complex(g, M, M);
  f.d.R0 = 0.1 * a * a.adjoint();
  std::uniform_real_distribution<double> u(0.0, 6.28);
  RVector p(N);
  for (int i = 0; i < N; ++i) p(i) = u(g);
  f.v = ReflectCoeffs(p);
  return f;
}

}  // namespace

TEST_CASE("noiseless echo is inverted exactly") {
  const auto f = make(1);
  const auto H = random_target(4, 9);
  EchoBatch b;
  b.X = draw_transmit_samples(f.d, 32, 2);
  b.Y = echo_channel(f.ch, f.v, H) * b.X;
  b.sigma_r2 = f.ch.sigma_r2;
  const auto est = ls_estimate(b, f.ch, f.v);
  CHECK((est.H - H.H).norm() < 1e-9 * H.H.norm());
}

TEST_CASE("zero echo gives a zero estimate") {
  const auto f = make(2);
  EchoBatch b;
  b.X = draw_transmit_samples(f.d, 16, 3);
  b.Y = CMatrix::Zero(6, 16);
  b.sigma_r2 = 1.0;
  CHECK(ls_estimate(b, f.ch, f.v).H.norm() == 0.0);
}

TEST_CASE("too few samples leave C rank deficient") {
  const auto f = make(3);
  const auto batch = simulate_echo(f.ch, f.v, f.d, random_target(4, 1), 3, 4);
  try {
    ls_estimate(batch, f.ch, f.v);
    FAIL("expected a ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("C = Phi G X") != std::string::npos);
  }
}

TEST_CASE("symmetric targets are symmetric") {
  const auto H = random_target(5, 11, true);
  CHECK((H.H - H.H.transpose()).norm() < 1e-12);
  CHECK(H.symmetric);
}

TEST_CASE("sample covariance converges to R_x") {
  const auto f = make(4);
  const int T = 20000;
  const CMatrix X = draw_transmit_samples(f.d, T, 5);
  const CMatrix rhat = X * X.adjoint() / static_cast<double>(T);
  const CMatrix rx = f.d.rx();
  CHECK((rhat - rx).norm() < 0.05 * rx.norm());
}

TEST_CASE("empirical MSE matches the CRB at the sample covariance") {
  const auto f = make(5);
  const auto H = random_target(4, 6);
  const auto r = empirical_mse(f.ch, f.v, f.d, H, 64, 400, 7);
  CHECK(r.trial_error.size() == 400);
  const double oracle = crb(f.ch.G, r.rx_hat, f.ch.sigma_r2, 64);
  CHECK(r.crb_at_sample_cov == doctest::Approx(oracle).epsilon(1e-10));
  CHECK(r.mse == doctest::Approx(r.crb_at_sample_cov).epsilon(0.1));
  CHECK_THROWS_AS(empirical_mse(f.ch, f.v, f.d, H, 64, 50, 7), ValidationError);
}

TEST_CASE("MSE does not depend on the IRS phases") {
  auto f = make(6);
  const auto H = random_target(4, 8);
  const auto a = empirical_mse(f.ch, f.v, f.d, H, 64, 400, 9);
  f.v = ReflectCoeffs::ones(4);
  const auto b = empirical_mse(f.ch, f.v, f.d, H, 64, 400, 9);
  CHECK(a.crb_at_sample_cov == doctest::Approx(b.crb_at_sample_cov).epsilon(1e-12));
  CHECK(a.mse == doctest::Approx(b.mse).epsilon(0.15));
}
