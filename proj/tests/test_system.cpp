// Copyright 2026 The irs-isac Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "isac/errors.hpp"
#include "isac/system.hpp"
#include "test_util.hpp"

using namespace isac;
using isac::testing::random_complex;

namespace {

ChannelSet random_set(std::mt19937_64& g, int M, int N, int K) {
  ChannelSet ch;
  ch.G = random_complex(g, N, M);
  for (int k = 0; k < K; ++k) {
    ch.h_d.push_back(random_complex(g, M, 1));
    ch.h_r.push_back(random_complex(g, N, 1));
  }
  ch.sigma_k2 = RVector::Constant(K, 0.1);
  ch.sigma_r2 = 0.2;
  return ch;
}

ReflectCoeffs random_v(std::mt19937_64& g, int n) {
  std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
  RVector p(n);
  for (int i = 0; i < n; ++i) p(i) = u(g);
  return ReflectCoeffs(p);
}

}  // namespace

TEST_CASE("reflection coefficients are unit modulus") {
  const ReflectCoeffs v(RVector::LinSpaced(5, 0.0, 3.0));
  for (int i = 0; i < 5; ++i) CHECK(std::abs(v.v()(i)) == doctest::Approx(1.0));
  CHECK(v.phi().diagonal() == v.v());
  CVector raw(2);
  raw << cdouble(3, 0), cdouble(0, -0.5);
  const auto w = ReflectCoeffs::from_vector(raw);
  CHECK(std::abs(w.v()(0) - cdouble(1, 0)) < 1e-15);
  CHECK(std::abs(w.v()(1) - cdouble(0, -1)) < 1e-15);
}

TEST_CASE("combined channel") {
  std::mt19937_64 g(1);
  SUBCASE("zero IRS link leaves the direct channel") {
    auto ch = random_set(g, 4, 3, 2);
    for (auto& h : ch.h_r) h.setZero();
    const auto h = combined_channel(ch, random_v(g, 3));
    CHECK(h[0] == ch.h_d[0]);
    CHECK(h[1] == ch.h_d[1]);
  }
  SUBCASE("matches the entry-wise sum") {
    const auto ch = random_set(g, 5, 4, 3);
    const auto v = random_v(g, 4);
    const auto h = combined_channel(ch, v);
    for (int k = 0; k < 3; ++k) {
      for (int m = 0; m < 5; ++m) {
        cdouble acc = ch.h_d[k](m);
        for (int n = 0; n < 4; ++n)
          acc += std::conj(ch.G(n, m)) * std::conj(v.v()(n)) * ch.h_r[k](n);
        CHECK(std::abs(acc - h[k](m)) < 1e-12);
      }
    }
  }
  SUBCASE("single element, hand value") {
    ChannelSet ch;
    ch.G = CMatrix::Constant(1, 1, cdouble(0, 1));
    ch.h_d = {CVector::Constant(1, cdouble(1, 0))};
    ch.h_r = {CVector::Constant(1, cdouble(2, 0))};
    ch.sigma_k2 = RVector::Ones(1);
    ch.sigma_r2 = 1;
    // 1 + conj(j) * conj(j) * 2 = 1 - 2.
    const auto h = combined_channel(ch, ReflectCoeffs(RVector::Constant(1, std::numbers::pi / 2)));
    CHECK(std::abs(h[0](0) - cdouble(-1, 0)) < 1e-12);
  }
}

TEST_CASE("SINR for both receiver types") {
  TransmitDesign d;
  d.w = {CVector::Constant(1, cdouble(2, 0)), CVector::Constant(1, cdouble(1, 0))};
  d.R0 = CMatrix::Constant(1, 1, cdouble(3, 0));
  const std::vector<CVector> h{CVector::Constant(1, cdouble(1, 0)),
                               CVector::Constant(1, cdouble(0, 1))};
  const RVector s2 = RVector::Constant(2, 0.5);
  const RVector t1 = sinr(d, h, s2, ReceiverType::I);
  const RVector t2 = sinr(d, h, s2, ReceiverType::II);
  CHECK(t1(0) == doctest::Approx(4.0 / (1.0 + 3.0 + 0.5)));
  CHECK(t1(1) == doctest::Approx(1.0 / (4.0 + 3.0 + 0.5)));
  CHECK(t2(0) == doctest::Approx(4.0 / 1.5));
  CHECK(t2(1) == doctest::Approx(1.0 / 4.5));
  CHECK(total_power(d) == doctest::Approx(8.0));
  const RVector gamma = RVector::Constant(2, 0.1);
  // Slack of user 1, type I: 1/0.1 - 4 - 3 - 0.5.
  CHECK(min_sinr_slack(d, h, s2, gamma, ReceiverType::I) == doctest::Approx(2.5));
  CHECK(min_sinr_slack(d, h, s2, gamma, ReceiverType::II) == doctest::Approx(5.5));
}

TEST_CASE("CRB closed forms") {
  const CMatrix I2 = CMatrix::Identity(2, 2);
  CHECK(crb(I2, I2, 1.0, 1) == doctest::Approx(4.0));
  CHECK(crb(I2, I2, 2.0, 4) == doctest::Approx(2.0));

  std::mt19937_64 g(3);
  const CMatrix G = random_complex(g, 3, 5);
  const CMatrix A = random_complex(g, 5, 5);
  const CMatrix rx = A * A.adjoint();
  const double base = crb(G, rx, 0.3, 10);
  SUBCASE("explicit inverse") {
    const double t1 = (G * rx * G.adjoint()).inverse().trace().real();
    const double t2 = (G * G.adjoint()).inverse().trace().real();
    CHECK(base == doctest::Approx(0.3 / 10 * t1 * t2).epsilon(1e-10));
  }
  SUBCASE("inverse-linear in transmit power") {
    CHECK(crb(G, 4.0 * rx, 0.3, 10) == doctest::Approx(base / 4.0));
  }
  SUBCASE("invariant to a row-unitary change of G") {
    const CMatrix q = random_complex(g, 3, 3).householderQr().householderQ();
    CHECK(crb(q * G, rx, 0.3, 10) == doctest::Approx(base).epsilon(1e-10));
  }
  SUBCASE("singular transmit covariance is reported") {
    CHECK_THROWS_AS(crb(G, CMatrix::Zero(5, 5), 0.3, 10), NearSingular);
  }
}

TEST_CASE("lifted quadratics reproduce the received powers") {
  std::mt19937_64 g(5);
  for (const auto dims : {std::array<int, 3>{4, 3, 2}, std::array<int, 3>{3, 1, 1}}) {
    const int M = dims[0], N = dims[1], K = dims[2];
    const auto ch = random_set(g, M, N, K);
    TransmitDesign d;
    for (int k = 0; k < K; ++k) d.w.push_back(random_complex(g, M, 1));
    const CMatrix a = random_complex(g, M, M);
    d.R0 = a * a.adjoint();
    const auto lq = reflect_quadratics(ch, d);
    for (int trial = 0; trial < 100; ++trial) {
      const auto v = random_v(g, N);
      CVector vt(N + 1);
      vt << v.v(), cdouble(1, 0);
      const auto h = combined_channel(ch, v);
      for (int k = 0; k < K; ++k) {
        for (int i = 0; i < K; ++i) {
          const cdouble q = vt.dot(lq.Q[k][i] * vt);
          CHECK(std::abs(q.real() - std::norm(h[k].dot(d.w[i]))) <
                1e-9 * (1 + std::norm(h[k].dot(d.w[i]))));
          CHECK(std::abs(q.imag()) < 1e-9 * (1 + std::abs(q.real())));
        }
        const double r = vt.dot(lq.Q0[k] * vt).real();
        const double ref = h[k].dot(d.R0 * h[k]).real();
        CHECK(std::abs(r - ref) < 1e-9 * (1 + ref));
      }
    }
  }
  SUBCASE("zero sensing covariance gives zero Q0") {
    const auto ch = random_set(g, 3, 2, 1);
    TransmitDesign d;
    d.w = {random_complex(g, 3, 1)};
    d.R0 = CMatrix::Zero(3, 3);
    CHECK(reflect_quadratics(ch, d).Q0[0].norm() == 0.0);
  }
}

TEST_CASE("system parameters") {
  const auto p = SystemParams::from_db(30.0, 10.0, 3, 256);
  CHECK(p.P0 == doctest::Approx(1.0));
  CHECK(p.gamma.size() == 3);
  CHECK(p.gamma(2) == doctest::Approx(10.0));
  CHECK(db_to_gamma(-10.0) == doctest::Approx(0.1));
  CHECK_NOTHROW(p.validate(3));
  CHECK_THROWS_AS(p.validate(2), ValidationError);
  auto q = p;
  q.T = 0;
  CHECK_THROWS_AS(q.validate(3), ValidationError);
  CHECK(parse_receiver_type("II") == ReceiverType::II);
  CHECK(std::string(to_string(ReceiverType::I)) == "I");
  CHECK_THROWS_AS(parse_receiver_type("III"), ValidationError);
}
