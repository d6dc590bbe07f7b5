// Copyright 2026 The irs-isac Authors
// SPDX-License-Identifier: Apache-2.0

// Small dense semidefinite programs in primal standard form
//
//   minimize    sum_j <C_j, X_j> + c_f' x_f
//   subject to  sum_j <A_ij, X_j> + a_i' x_f  (= | >=)  b_i,   i = 1..m
//               X_j PSD,  x_f free,
//
// solved by a primal-dual interior-point method (Mehrotra predictor-corrector,
// Nesterov-Todd scaling, infeasible start). Blocks of dimension one are
// treated as nonnegative scalars. The Hermitian front end maps complex
// blocks to real symmetric blocks of twice the size, see embed_hermitian().

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "isac/linalg.hpp"

namespace isac::sdp {

/// One upper-triangle entry (row <= col) of a real symmetric coefficient.
/// Off-diagonal entries stand for both (row, col) and (col, row).
struct SymEntry {
  int row;
  int col;
  double value;
};

/// Coefficient matrix of one constraint (or the objective) on one block.
/// Stored either as sparse upper-triangle entries or as a dense matrix.
class BlockCoeff {
 public:
  BlockCoeff() = default;
  static BlockCoeff sparse(int block, std::vector<SymEntry> entries);
  static BlockCoeff dense(int block, RMatrix m);

  int block() const { return block_; }
  bool is_dense() const { return dense_; }
  const std::vector<SymEntry>& entries() const { return entries_; }
  const RMatrix& matrix() const { return matrix_; }

  /// <A, X> for symmetric X.
  double inner(const RMatrix& x) const;
  /// X += s * A.
  void add_to(RMatrix& x, double s) const;
  RMatrix to_dense(int dim) const;
  double frobenius_sq() const;

 private:
  int block_ = 0;
  bool dense_ = false;
  std::vector<SymEntry> entries_;
  RMatrix matrix_;
};

enum class Sense { Equal, GreaterEqual };

struct Constraint {
  std::vector<BlockCoeff> blocks;
  std::vector<std::pair<int, double>> free;  // (free variable index, coeff)
  double rhs = 0.0;
  Sense sense = Sense::Equal;
};

struct BlockSpec {
  std::string label;
  int dim = 1;
};

struct SdpProblem {
  std::vector<BlockSpec> blocks;
  int free_vars = 0;
  std::vector<BlockCoeff> objective;
  RVector objective_free;  // empty or size free_vars
  std::vector<Constraint> constraints;

  /// Throws ValidationError describing the first malformed item.
  void validate() const;
};

enum class SdpStatus { Optimal, Infeasible, Unbounded, NumericalFailure };
const char* to_string(SdpStatus s);

struct IterationInfo {
  double primal_objective;
  double dual_objective;
  double primal_residual;
  double dual_residual;
  double complementarity;  // sum <X_j, Z_j> over all cones
  double primal_step;
  double dual_step;
};

struct SdpSolution {
  SdpStatus status = SdpStatus::NumericalFailure;
  std::vector<RMatrix> blocks;      // primal X_j, in problem order
  std::vector<RMatrix> dual_slack;  // Z_j
  RVector free;                     // x_f
  RVector dual;                     // y, one per constraint
  double primal_objective = 0.0;
  double dual_objective = 0.0;
  // Relative residuals of the row-normalized problem the solver iterates on.
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double gap = 0.0;
  int iterations = 0;
  /// For Infeasible: y scaled so that b'y = 1 (a Farkas ray), and the
  /// Frobenius norm by which it misses dual-cone feasibility.
  RVector infeasibility_ray;
  double ray_violation = 0.0;
  std::vector<IterationInfo> history;
};

struct SolverOptions {
  int max_iterations = 200;
  double tolerance = 1e-8;
  double step_fraction = 0.98;
  double free_regularization = 1e-12;
  double infeasibility_threshold = 1e8;
};

SdpSolution solve(const SdpProblem& p, const SolverOptions& opt = {});

/// JSON debug dump of a problem (schema in docs/sdp_dump.md).
std::string dump_json(const SdpProblem& p);

// ---------------------------------------------------------------------------
// Hermitian front end

/// Upper-triangle entry of a complex Hermitian coefficient. For row < col it
/// stands for value at (row, col) and conj(value) at (col, row); diagonal
/// entries must be real.
struct HermEntry {
  int row;
  int col;
  cdouble value;
};

class HermBlockCoeff {
 public:
  HermBlockCoeff() = default;
  static HermBlockCoeff sparse(int block, std::vector<HermEntry> entries);
  static HermBlockCoeff dense(int block, CMatrix m);

  int block() const { return block_; }
  bool is_dense() const { return dense_; }
  const std::vector<HermEntry>& entries() const { return entries_; }
  const CMatrix& matrix() const { return matrix_; }

  /// Re tr(A X) for Hermitian X.
  double inner(const CMatrix& x) const;

 private:
  int block_ = 0;
  bool dense_ = false;
  std::vector<HermEntry> entries_;
  CMatrix matrix_;
};

struct HermConstraint {
  std::vector<HermBlockCoeff> blocks;
  std::vector<std::pair<int, double>> free;
  double rhs = 0.0;
  Sense sense = Sense::Equal;
};

/// Same shape as SdpProblem with complex Hermitian blocks (dims are complex
/// dimensions) and the real inner product <A, X> = Re tr(A X).
struct HermitianSdp {
  std::vector<BlockSpec> blocks;
  int free_vars = 0;
  std::vector<HermBlockCoeff> objective;
  RVector objective_free;
  std::vector<HermConstraint> constraints;
};

/// [[Re X, -Im X], [Im X, Re X]].
RMatrix embed(const CMatrix& x);
/// Inverse of embed() for matrices with the embedded structure; a real
/// symmetric input is projected onto it by averaging.
CMatrix deembed(const RMatrix& x);

/// Maps every n x n Hermitian block to a 2n x 2n real symmetric block.
/// Variables map through embed(); coefficients map through embed(A) / 2, so
/// that <embed(A)/2, embed(X)> = Re tr(A X) exactly (tr(embed(X)) = 2 tr(X)).
/// Throws ValidationError for non-Hermitian coefficient data.
SdpProblem embed_hermitian(const HermitianSdp& h);

struct HermitianSolution {
  SdpSolution raw;
  std::vector<CMatrix> blocks;  // de-embedded primal blocks
};

HermitianSolution solve_hermitian(const HermitianSdp& h,
                                  const SolverOptions& opt = {});

}  // namespace isac::sdp
