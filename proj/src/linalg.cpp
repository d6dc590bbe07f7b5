// Copyright 2026 The irs-isac Authors
// SPDX-License-Identifier: Apache-2.0

#include "isac/linalg.hpp"

#include <cmath>
#include <string>

#include "isac/errors.hpp"

namespace isac {

HermitianMatrix::HermitianMatrix(const CMatrix& a) {
  if (a.rows() != a.cols()) {
    throw ValidationError("HermitianMatrix: matrix is not square");
  }
  m_ = (a + a.adjoint()) * 0.5;
  for (Eigen::Index i = 0; i < m_.rows(); ++i) {
    m_(i, i) = cdouble(m_(i, i).real(), 0.0);
  }
}

HermitianMatrix HermitianMatrix::zero(Eigen::Index n) {
  return HermitianMatrix(CMatrix::Zero(n, n));
}

HermitianMatrix HermitianMatrix::identity(Eigen::Index n) {
  return HermitianMatrix(CMatrix::Identity(n, n));
}

HermitianMatrix HermitianMatrix::operator+(const HermitianMatrix& o) const {
  return HermitianMatrix(m_ + o.m_);
}

HermitianMatrix HermitianMatrix::operator-(const HermitianMatrix& o) const {
  return HermitianMatrix(m_ - o.m_);
}

HermitianMatrix HermitianMatrix::operator*(double s) const {
  return HermitianMatrix(m_ * s);
}

double hermitian_defect(const CMatrix& a) {
  if (a.rows() != a.cols()) return INFINITY;
  return (a - a.adjoint()).norm() / std::max(1.0, a.norm());
}

EigenDecomposition herm_eig(const HermitianMatrix& a) {
  // Householder tridiagonalization followed by implicit-shift QL/QR.
  Eigen::SelfAdjointEigenSolver<CMatrix> es(a.matrix());
  if (es.info() != Eigen::Success) {
    throw NumericalError("herm_eig: eigenvalue iteration did not converge");
  }
  return {es.eigenvalues(), es.eigenvectors()};
}

CMatrix cholesky_lower(const HermitianMatrix& a) {
  const auto n = a.dim();
  CMatrix l = CMatrix::Zero(n, n);
  const CMatrix& m = a.matrix();
  for (Eigen::Index j = 0; j < n; ++j) {
    double d = m(j, j).real();
    for (Eigen::Index k = 0; k < j; ++k) d -= std::norm(l(j, k));
    if (!(d > 0.0) || !std::isfinite(d)) {
      throw NotPositiveDefinite(
          "cholesky: non-positive pivot at index " + std::to_string(j),
          static_cast<int>(j));
    }
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (Eigen::Index i = j + 1; i < n; ++i) {
      cdouble s = m(i, j);
      for (Eigen::Index k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
      l(i, j) = s / ljj;
    }
  }
  return l;
}

CMatrix solve_psd(const HermitianMatrix& a, const CMatrix& b) {
  if (b.rows() != a.dim()) {
    throw ValidationError("solve_psd: row count of B does not match A");
  }
  const CMatrix l = cholesky_lower(a);
  const auto lv = l.triangularView<Eigen::Lower>();
  CMatrix y = lv.solve(b);
  return lv.adjoint().solve(y);
}

double trace_inv(const HermitianMatrix& a) {
  if (a.dim() == 0) throw ValidationError("trace_inv: empty matrix");
  const auto ev = herm_eig(a).values;
  const double lmax = ev.maxCoeff();
  const double lmin = ev.minCoeff();
  if (!(lmax > 0.0) || lmin <= kPdTolerance * lmax) {
    throw NearSingular("trace_inv: matrix is singular to working tolerance");
  }
  return ev.cwiseInverse().sum();
}

CMatrix psd_factor(const HermitianMatrix& a) {
  const auto ed = herm_eig(a);
  RVector s = ed.values.cwiseMax(0.0).cwiseSqrt();
  return ed.vectors * s.asDiagonal();
}

}  // namespace isac
