// Copyright 2026 The irs-isac Authors
// SPDX-License-Identifier: Apache-2.0

#include <random>

#include "doctest.h"
#include "isac/errors.hpp"
#include "isac/linalg.hpp"
#include "test_util.hpp"

using namespace isac;
using isac::testing::random_complex;
using isac::testing::random_hermitian;
using isac::testing::random_pd;

TEST_CASE("herm_eig of the identity") {
  const auto ed = herm_eig(HermitianMatrix::identity(3));
  for (int i = 0; i < 3; ++i) CHECK(ed.values(i) == doctest::Approx(1.0));
}

TEST_CASE("herm_eig of diag(2, -1) sorts ascending") {
  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = 2.0;
  d(1, 1) = -1.0;
  const auto ed = herm_eig(HermitianMatrix(d));
  CHECK(ed.values(0) == doctest::Approx(-1.0));
  CHECK(ed.values(1) == doctest::Approx(2.0));
  CHECK(std::abs(ed.vectors(1, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(ed.vectors(0, 1)) == doctest::Approx(1.0));
}

TEST_CASE("herm_eig reconstructs random Hermitian matrices") {
  std::mt19937_64 g(7);
  for (int n : {1, 5, 12}) {
    const auto a = random_hermitian(g, n);
    const auto ed = herm_eig(a);
    const CMatrix rec = ed.vectors * ed.values.asDiagonal() * ed.vectors.adjoint();
    CHECK((rec - a.matrix()).norm() < 1e-10 * a.matrix().norm());
    CHECK((ed.vectors.adjoint() * ed.vectors - CMatrix::Identity(n, n)).norm() < 1e-10);
    for (int i = 1; i < n; ++i) CHECK(ed.values(i - 1) <= ed.values(i));
  }
}

TEST_CASE("HermitianMatrix symmetrizes and clears diagonal imaginary parts") {
  std::mt19937_64 g(3);
  const CMatrix a = random_complex(g, 4, 4);
  const HermitianMatrix h(a);
  CHECK(hermitian_defect(h.matrix()) < 1e-15);
  for (int i = 0; i < 4; ++i) CHECK(h(i, i).imag() == 0.0);
}

TEST_CASE("solve_psd") {
  std::mt19937_64 g(11);
  SUBCASE("identity returns B") {
    const CMatrix b = random_complex(g, 3, 2);
    CHECK((solve_psd(HermitianMatrix::identity(3), b) - b).norm() < 1e-15);
  }
  SUBCASE("2I gives half") {
    const CMatrix x = solve_psd(HermitianMatrix::identity(3) * 2.0, CMatrix::Identity(3, 3));
    CHECK((x - 0.5 * CMatrix::Identity(3, 3)).norm() < 1e-15);
  }
  SUBCASE("random PD residual") {
    const auto a = random_pd(g, 6);
    const CMatrix b = random_complex(g, 6, 3);
    const CMatrix x = solve_psd(a, b);
    CHECK((a.matrix() * x - b).norm() < 1e-10 * b.norm());
  }
}

TEST_CASE("solve_psd reports the failing pivot") {
  CMatrix a = CMatrix::Identity(3, 3);
  a(2, 2) = -1.0;
  try {
    solve_psd(HermitianMatrix(a), CMatrix::Identity(3, 3));
    FAIL("expected NotPositiveDefinite");
  } catch (const NotPositiveDefinite& e) {
    CHECK(e.pivot() == 2);
  }
}

TEST_CASE("trace_inv") {
  CHECK(trace_inv(HermitianMatrix::identity(4)) == doctest::Approx(4.0));
  CMatrix d = CMatrix::Zero(3, 3);
  d.diagonal() << 1.0, 2.0, 4.0;
  CHECK(trace_inv(HermitianMatrix(d)) == doctest::Approx(1.75));

  std::mt19937_64 g(5);
  const auto a = random_pd(g, 5);
  const double explicit_inv = a.matrix().inverse().trace().real();
  CHECK(trace_inv(a) == doctest::Approx(explicit_inv).epsilon(1e-12));
}

TEST_CASE("trace_inv properties") {
  std::mt19937_64 g(9);
  const auto a = random_pd(g, 5);
  CHECK(trace_inv(a * 3.0) == doctest::Approx(trace_inv(a) / 3.0).epsilon(1e-12));
  CHECK(trace_inv(a) >= 25.0 / a.trace());
  CHECK(trace_inv(HermitianMatrix::identity(5) * 2.0) == doctest::Approx(25.0 / 10.0));
}

TEST_CASE("trace_inv rejects singular input") {
  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = 1.0;
  CHECK_THROWS_AS(trace_inv(HermitianMatrix(d)), NearSingular);
}

TEST_CASE("PSD eigenvalues are not below the tolerance") {
  std::mt19937_64 g(13);
  const CMatrix f = random_complex(g, 6, 2);
  const HermitianMatrix a(f * f.adjoint());
  CHECK(herm_eig(a).values.minCoeff() >= -1e-12 * a.matrix().norm());
}

TEST_CASE("psd_factor handles singular matrices") {
  std::mt19937_64 g(17);
  const CMatrix f = random_complex(g, 5, 2);
  const HermitianMatrix a(f * f.adjoint());
  const CMatrix l = psd_factor(a);
  CHECK((l * l.adjoint() - a.matrix()).norm() < 1e-10 * a.matrix().norm());
  CHECK_THROWS_AS(cholesky_lower(HermitianMatrix(CMatrix::Zero(2, 2))), NotPositiveDefinite);
}
