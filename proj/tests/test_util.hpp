// Copyright 2026 The irs-isac Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <random>

#include "isac/linalg.hpp"

namespace isac::testing {

inline CMatrix random_complex(std::mt19937_64& g, int r, int c) {
  std::normal_distribution<double> n(0.0, 1.0);
  CMatrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = cdouble(n(g), n(g));
  return m;
}

inline HermitianMatrix random_hermitian(std::mt19937_64& g, int n) {
  return HermitianMatrix(random_complex(g, n, n));
}

inline HermitianMatrix random_pd(std::mt19937_64& g, int n, double shift = 0.5) {
  const CMatrix a = random_complex(g, n, n);
  return HermitianMatrix(a * a.adjoint() + shift * CMatrix::Identity(n, n));
}

inline RMatrix random_symmetric(std::mt19937_64& g, int n) {
  std::normal_distribution<double> d(0.0, 1.0);
  RMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = d(g);
  return 0.5 * (m + m.transpose());
}

}  // namespace isac::testing
