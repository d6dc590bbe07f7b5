// Copyright 2026 The irs-isac Authors
// SPDX-License-Identifier: Apache-2.0

// Dense complex kernels shared by the solver, channel and beamforming code.
//
// Storage follows Eigen (column-major in memory). Anything that leaves the
// process (JSON fixtures, channel dumps) is written row-major with complex
// entries as [re, im] pairs, see json_io.hpp.

#pragma once

#include <Eigen/Dense>
#include <complex>

namespace isac {

using cdouble = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// Complex matrix known to be Hermitian. Construction symmetrizes the input
/// (A + A^H)/2, so the diagonal is exactly real afterwards.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(const CMatrix& a);
  static HermitianMatrix zero(Eigen::Index n);
  static HermitianMatrix identity(Eigen::Index n);

  Eigen::Index dim() const { return m_.rows(); }
  const CMatrix& matrix() const { return m_; }
  cdouble operator()(Eigen::Index r, Eigen::Index c) const { return m_(r, c); }
  double trace() const { return m_.diagonal().real().sum(); }

  HermitianMatrix operator+(const HermitianMatrix& o) const;
  HermitianMatrix operator-(const HermitianMatrix& o) const;
  HermitianMatrix operator*(double s) const;

 private:
  CMatrix m_;
};

/// Relative Hermitian defect ||A - A^H||_F / max(1, ||A||_F).
double hermitian_defect(const CMatrix& a);

struct EigenDecomposition {
  RVector values;   // ascending
  CMatrix vectors;  // columns are orthonormal eigenvectors
};

/// Full eigendecomposition of a Hermitian matrix.
/// Throws NumericalError if the QL iteration does not converge.
EigenDecomposition herm_eig(const HermitianMatrix& a);

/// Solves A X = B for Hermitian positive definite A by Cholesky.
/// Throws NotPositiveDefinite carrying the index of the failing pivot.
CMatrix solve_psd(const HermitianMatrix& a, const CMatrix& b);

/// Lower Cholesky factor L with A = L L^H. Same failure contract as solve_psd.
CMatrix cholesky_lower(const HermitianMatrix& a);

/// tr(A^{-1}) = sum of reciprocal eigenvalues.
/// Throws NearSingular when the smallest eigenvalue is not above
/// kPdTolerance times the largest.
double trace_inv(const HermitianMatrix& a);

/// PSD square-root-style factor F with A = F F^H, valid for singular A
/// (eigenvalues below zero are clipped).
CMatrix psd_factor(const HermitianMatrix& a);

inline constexpr double kPdTolerance = 1e-12;

}  // namespace isac
