// Copyright 2026 The irs-isac Authors
// SPDX-License-Identifier: Apache-2.0

#include "isac/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "isac/errors.hpp"

namespace isac::sdp {

// ---------------------------------------------------------------------------
// BlockCoeff

BlockCoeff BlockCoeff::sparse(int block, std::vector<SymEntry> entries) {
  BlockCoeff c;
  c.block_ = block;
  c.dense_ = false;
  for (auto& e : entries) {
    if (e.row > e.col) std::swap(e.row, e.col);
  }
  c.entries_ = std::move(entries);
  return c;
}

BlockCoeff BlockCoeff::dense(int block, RMatrix m) {
  BlockCoeff c;
  c.block_ = block;
  c.dense_ = true;
  c.matrix_ = std::move(m);
  return c;
}

double BlockCoeff::inner(const RMatrix& x) const {
  if (dense_) return matrix_.cwiseProduct(x).sum();
  double s = 0.0;
  for (const auto& e : entries_) {
    s += (e.row == e.col ? 1.0 : 2.0) * e.value * x(e.row, e.col);
  }
  return s;
}

void BlockCoeff::add_to(RMatrix& x, double s) const {
  if (dense_) {
    x.noalias() += s * matrix_;
    return;
  }
  for (const auto& e : entries_) {
    x(e.row, e.col) += s * e.value;
    if (e.row != e.col) x(e.col, e.row) += s * e.value;
  }
}

RMatrix BlockCoeff::to_dense(int dim) const {
  RMatrix m = RMatrix::Zero(dim, dim);
  add_to(m, 1.0);
  return m;
}

double BlockCoeff::frobenius_sq() const {
  if (dense_) return matrix_.squaredNorm();
  double s = 0.0;
  for (const auto& e : entries_) {
    s += (e.row == e.col ? 1.0 : 2.0) * e.value * e.value;
  }
  return s;
}

const char* to_string(SdpStatus s) {
  switch (s) {
    case SdpStatus::Optimal: return "Optimal";
    case SdpStatus::Infeasible: return "Infeasible";
    case SdpStatus::Unbounded: return "Unbounded";
    case SdpStatus::NumericalFailure: return "NumericalFailure";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Validation

namespace {

void check_coeff(const BlockCoeff& c, const SdpProblem& p,
                 const std::string& where) {
  if (c.block() < 0 || c.block() >= static_cast<int>(p.blocks.size())) {
    throw ValidationError(where + ": block index out of range");
  }
  const int n = p.blocks[c.block()].dim;
  if (c.is_dense()) {
    const auto& m = c.matrix();
    if (m.rows() != n || m.cols() != n) {
      throw ValidationError(where + ": dense coefficient has wrong size");
    }
    if ((m - m.transpose()).norm() > 1e-12 * std::max(1.0, m.norm())) {
      throw ValidationError(where + ": coefficient is not symmetric");
    }
    if (!m.allFinite()) throw ValidationError(where + ": non-finite entry");
  } else {
    for (const auto& e : c.entries()) {
      if (e.row < 0 || e.col >= n || e.row > e.col) {
        throw ValidationError(where + ": sparse entry out of range");
      }
      if (!std::isfinite(e.value)) {
        throw ValidationError(where + ": non-finite entry");
      }
    }
  }
}

}  // namespace

void SdpProblem::validate() const {
  if (blocks.empty() && free_vars == 0) {
    throw ValidationError("SdpProblem: no variables");
  }
  for (const auto& b : blocks) {
    if (b.dim < 1) throw ValidationError("SdpProblem: block dim must be >= 1");
  }
  if (free_vars < 0) throw ValidationError("SdpProblem: negative free_vars");
  if (objective_free.size() != 0 && objective_free.size() != free_vars) {
    throw ValidationError("SdpProblem: objective_free has wrong size");
  }
  for (const auto& c : objective) check_coeff(c, *this, "objective");
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    const auto& con = constraints[i];
    const std::string where = "constraint " + std::to_string(i);
    double norm = 0.0;
    for (const auto& c : con.blocks) {
      check_coeff(c, *this, where);
      norm += c.frobenius_sq();
    }
    for (const auto& [k, v] : con.free) {
      if (k < 0 || k >= free_vars) {
        throw ValidationError(where + ": free variable index out of range");
      }
      norm += v * v;
    }
    if (!std::isfinite(con.rhs)) throw ValidationError(where + ": bad rhs");
    if (norm == 0.0) throw ValidationError(where + ": all-zero coefficients");
  }
  if (constraints.empty() && objective.empty()) {
    throw ValidationError("SdpProblem: no constraints and no objective");
  }
}

// ---------------------------------------------------------------------------
// Interior-point method

namespace {

struct SparseTerm {
  int row;  // constraint index
  std::vector<SymEntry> entries;
};

struct DenseTerm {
  int row;
  RMatrix a;
};

struct Cone {
  int user_block;
  int dim;
  RMatrix c;
  std::vector<SparseTerm> sparse;
  std::vector<DenseTerm> dense;

  // Iterate and Nesterov-Todd scaling data.
  RMatrix x, z;
  RMatrix g, ginv, w;
  RVector lambda;
};

struct LpVar {
  int user_block;  // -1 for slacks
  double c = 0.0;
  std::vector<std::pair<int, double>> col;  // (constraint, coefficient)
  double x = 0.0, z = 0.0;
};

double sym_inner_sparse(const std::vector<SymEntry>& e, const RMatrix& x) {
  double s = 0.0;
  for (const auto& t : e) {
    s += (t.row == t.col ? 1.0 : 2.0) * t.value * x(t.row, t.col);
  }
  return s;
}

void add_sparse(RMatrix& x, const std::vector<SymEntry>& e, double s) {
  for (const auto& t : e) {
    x(t.row, t.col) += s * t.value;
    if (t.row != t.col) x(t.col, t.row) += s * t.value;
  }
}

// <E_e, W E_f W> for symmetric unit matrices built from entries e and f.
double sparse_pair(const SymEntry& e, const SymEntry& f, const RMatrix& w) {
  const int a = e.row, b = e.col, c = f.row, d = f.col;
  double k;
  if (a == b && c == d) {
    k = w(a, c) * w(a, c);
  } else if (a == b) {
    k = 2.0 * w(a, c) * w(a, d);
  } else if (c == d) {
    k = 2.0 * w(c, a) * w(c, b);
  } else {
    k = 2.0 * (w(b, c) * w(a, d) + w(b, d) * w(a, c));
  }
  return e.value * f.value * k;
}

RMatrix symmetrize(const RMatrix& m) { return 0.5 * (m + m.transpose()); }

// Largest a in (0, inf] with Lambda + a * D PSD, where the scaled direction
// D is pre-multiplied on both sides by Lambda^{-1/2}.
double max_step(const RVector& lambda, const RMatrix& d) {
  const RVector s = lambda.cwiseSqrt().cwiseInverse();
  const RMatrix t = s.asDiagonal() * d * s.asDiagonal();
  Eigen::SelfAdjointEigenSolver<RMatrix> es(symmetrize(t),
                                            Eigen::EigenvaluesOnly);
  const double mn = es.eigenvalues().minCoeff();
  return mn < 0.0 ? -1.0 / mn : std::numeric_limits<double>::infinity();
}

class InteriorPoint {
 public:
  InteriorPoint(const SdpProblem& p, const SolverOptions& opt)
      : p_(p), opt_(opt) {
    build();
  }

  SdpSolution run();

 private:
  void build();
  RVector apply_a(const std::vector<RMatrix>& xs, const RVector& xlp,
                  const RVector& xf) const;
  void residuals();
  bool scale();
  void assemble_schur();
  bool factor();
  RVector solve_kkt(const RVector& r1, const RVector& r2) const;
  struct Direction {
    std::vector<RMatrix> dx, dz;
    RVector dxlp, dzlp, dy, dxf;
  };
  Direction direction(const std::vector<RMatrix>& rc, const RVector& rclp);
  void step_lengths(const Direction& d, double& ap, double& ad) const;
  SdpSolution finish(SdpStatus st);

  const SdpProblem& p_;
  SolverOptions opt_;
  int m_ = 0;
  int nf_ = 0;
  std::vector<Cone> cones_;
  std::vector<LpVar> lp_;
  std::vector<int> block_cone_;  // user block -> cone index or -1
  std::vector<int> block_lp_;    // user block -> lp index or -1
  RVector b_, row_scale_, cf_;
  RMatrix af_;  // m x nf

  RVector y_, xf_;
  // Residuals.
  RVector rp_, rdlp_, rf_;
  std::vector<RMatrix> rd_;
  double pobj_ = 0, dobj_ = 0, relp_ = 0, reld_ = 0, gap_ = 0, compl_ = 0;
  double normb_ = 0, normc_ = 0, obj_scale_ = 1.0;
  double mu_ = 0;
  int total_dim_ = 0;
  RMatrix schur_;
  Eigen::LLT<RMatrix> llt_;
  Eigen::PartialPivLU<RMatrix> lu_;
  bool use_lu_ = false;
  std::vector<IterationInfo> history_;
  int iter_ = 0;
};

void InteriorPoint::build() {
  p_.validate();
  m_ = static_cast<int>(p_.constraints.size());
  nf_ = p_.free_vars;
  const int nb = static_cast<int>(p_.blocks.size());
  block_cone_.assign(nb, -1);
  block_lp_.assign(nb, -1);
  for (int j = 0; j < nb; ++j) {
    const int n = p_.blocks[j].dim;
    if (n >= 2) {
      block_cone_[j] = static_cast<int>(cones_.size());
      Cone c;
      c.user_block = j;
      c.dim = n;
      c.c = RMatrix::Zero(n, n);
      cones_.push_back(std::move(c));
    } else {
      block_lp_[j] = static_cast<int>(lp_.size());
      LpVar v;
      v.user_block = j;
      lp_.push_back(v);
    }
  }
  for (const auto& oc : p_.objective) {
    const int j = oc.block();
    if (block_cone_[j] >= 0) {
      oc.add_to(cones_[block_cone_[j]].c, 1.0);
    } else {
      lp_[block_lp_[j]].c += oc.is_dense() ? oc.matrix()(0, 0)
                                           : sym_inner_sparse(oc.entries(),
                                                              RMatrix::Ones(1, 1));
    }
  }
  cf_ = RVector::Zero(nf_);
  if (p_.objective_free.size() == nf_ && nf_ > 0) cf_ = p_.objective_free;

  b_ = RVector::Zero(m_);
  row_scale_ = RVector::Ones(m_);
  af_ = RMatrix::Zero(m_, nf_);
  for (int i = 0; i < m_; ++i) {
    const auto& con = p_.constraints[i];
    double norm = 0.0;
    for (const auto& c : con.blocks) norm += c.frobenius_sq();
    for (const auto& [k, v] : con.free) norm += v * v;
    const double s = 1.0 / std::sqrt(norm);
    row_scale_(i) = s;
    b_(i) = s * con.rhs;
    for (const auto& [k, v] : con.free) af_(i, k) += s * v;
    for (const auto& c : con.blocks) {
      const int j = c.block();
      if (block_lp_[j] >= 0) {
        const double a = c.is_dense() ? c.matrix()(0, 0)
                                      : sym_inner_sparse(c.entries(),
                                                         RMatrix::Ones(1, 1));
        if (a != 0.0) lp_[block_lp_[j]].col.emplace_back(i, s * a);
        continue;
      }
      Cone& cone = cones_[block_cone_[j]];
      const int n = cone.dim;
      const bool go_dense =
          c.is_dense() || static_cast<int>(c.entries().size()) > 2 * n;
      if (go_dense) {
        RMatrix a = c.to_dense(n) * s;
        cone.dense.push_back({i, std::move(a)});
      } else {
        auto e = c.entries();
        for (auto& t : e) t.value *= s;
        cone.sparse.push_back({i, std::move(e)});
      }
    }
    if (con.sense == Sense::GreaterEqual) {
      LpVar v;
      v.user_block = -1;
      v.col.emplace_back(i, -s);
      lp_.push_back(v);
    }
  }
  total_dim_ = static_cast<int>(lp_.size());
  for (const auto& c : cones_) total_dim_ += c.dim;

  normb_ = b_.norm();
  normc_ = cf_.squaredNorm();
  for (const auto& c : cones_) normc_ += c.c.squaredNorm();
  for (const auto& v : lp_) normc_ += v.c * v.c;
  normc_ = std::sqrt(normc_);
  // Unit objective: the central path then does not depend on its scale.
  if (normc_ > 0.0) {
    obj_scale_ = normc_;
    cf_ /= obj_scale_;
    for (auto& c : cones_) c.c /= obj_scale_;
    for (auto& v : lp_) v.c /= obj_scale_;
    normc_ = 1.0;
  }

  const double tau_p = 1.0 + (m_ > 0 ? b_.cwiseAbs().maxCoeff() : 0.0);
  double cmax = cf_.size() ? cf_.cwiseAbs().maxCoeff() : 0.0;
  for (const auto& c : cones_) {
    if (c.c.size()) cmax = std::max(cmax, c.c.cwiseAbs().maxCoeff());
  }
  for (const auto& v : lp_) cmax = std::max(cmax, std::abs(v.c));
  const double tau_d = 1.0 + cmax;
  for (auto& c : cones_) {
    c.x = tau_p * RMatrix::Identity(c.dim, c.dim);
    c.z = tau_d * RMatrix::Identity(c.dim, c.dim);
  }
  for (auto& v : lp_) {
    v.x = tau_p;
    v.z = tau_d;
  }
  y_ = RVector::Zero(m_);
  xf_ = RVector::Zero(nf_);
}

RVector InteriorPoint::apply_a(const std::vector<RMatrix>& xs,
                               const RVector& xlp, const RVector& xf) const {
  RVector r = RVector::Zero(m_);
  for (std::size_t k = 0; k < cones_.size(); ++k) {
    const auto& c = cones_[k];
    for (const auto& t : c.dense) r(t.row) += t.a.cwiseProduct(xs[k]).sum();
    for (const auto& t : c.sparse) r(t.row) += sym_inner_sparse(t.entries, xs[k]);
  }
  for (std::size_t l = 0; l < lp_.size(); ++l) {
    for (const auto& [i, a] : lp_[l].col) r(i) += a * xlp(l);
  }
  if (nf_ > 0) r += af_ * xf;
  return r;
}

void InteriorPoint::residuals() {
  std::vector<RMatrix> xs;
  xs.reserve(cones_.size());
  for (const auto& c : cones_) xs.push_back(c.x);
  RVector xlp(lp_.size());
  for (std::size_t l = 0; l < lp_.size(); ++l) xlp(l) = lp_[l].x;
  rp_ = b_ - apply_a(xs, xlp, xf_);

  rd_.resize(cones_.size());
  double rdn = 0.0;
  pobj_ = cf_.dot(xf_);
  compl_ = 0.0;
  for (std::size_t k = 0; k < cones_.size(); ++k) {
    const auto& c = cones_[k];
    RMatrix r = c.c - c.z;
    for (const auto& t : c.dense) r.noalias() -= y_(t.row) * t.a;
    for (const auto& t : c.sparse) add_sparse(r, t.entries, -y_(t.row));
    rdn += r.squaredNorm();
    rd_[k] = std::move(r);
    pobj_ += c.c.cwiseProduct(c.x).sum();
    compl_ += c.x.cwiseProduct(c.z).sum();
  }
  rdlp_.resize(lp_.size());
  for (std::size_t l = 0; l < lp_.size(); ++l) {
    const auto& v = lp_[l];
    double r = v.c - v.z;
    for (const auto& [i, a] : v.col) r -= a * y_(i);
    rdlp_(l) = r;
    pobj_ += v.c * v.x;
    compl_ += v.x * v.z;
  }
  rdn += rdlp_.squaredNorm();
  rf_ = cf_;
  if (nf_ > 0) rf_ -= af_.transpose() * y_;
  rdn += rf_.squaredNorm();
  dobj_ = b_.dot(y_);
  relp_ = rp_.norm() / (1.0 + normb_);
  reld_ = std::sqrt(rdn) / (1.0 + normc_);
  const double denom = 1.0 + std::abs(pobj_) + std::abs(dobj_);
  gap_ = std::max(std::abs(pobj_ - dobj_), std::abs(compl_)) / denom;
  mu_ = total_dim_ > 0 ? compl_ / total_dim_ : 0.0;
}

bool InteriorPoint::scale() {
  for (auto& c : cones_) {
    Eigen::LLT<RMatrix> lx(c.x);
    if (lx.info() != Eigen::Success) return false;
    const RMatrix l = lx.matrixL();
    const RMatrix t = l.transpose() * c.z * l;
    Eigen::SelfAdjointEigenSolver<RMatrix> es(symmetrize(t));
    if (es.info() != Eigen::Success) return false;
    const RVector ev = es.eigenvalues();
    if (!(ev.minCoeff() > 0.0)) return false;
    c.lambda = ev.cwiseSqrt();
    const RVector isq = c.lambda.cwiseSqrt().cwiseInverse();
    c.g = l * es.eigenvectors() * isq.asDiagonal();
    const RMatrix linv = l.triangularView<Eigen::Lower>().solve(
        RMatrix::Identity(c.dim, c.dim));
    c.ginv = c.lambda.cwiseSqrt().asDiagonal() *
             es.eigenvectors().transpose() * linv;
    c.w = symmetrize(c.g * c.g.transpose());
  }
  for (const auto& v : lp_) {
    if (!(v.x > 0.0) || !(v.z > 0.0)) return false;
  }
  return true;
}

void InteriorPoint::assemble_schur() {
  schur_ = RMatrix::Zero(m_, m_);
  for (const auto& c : cones_) {
    const RMatrix& w = c.w;
    for (std::size_t a = 0; a < c.dense.size(); ++a) {
      const auto& ti = c.dense[a];
      const RMatrix f = symmetrize(w * ti.a * w);
      for (std::size_t b = a; b < c.dense.size(); ++b) {
        const auto& tk = c.dense[b];
        const double v = tk.a.cwiseProduct(f).sum();
        schur_(ti.row, tk.row) += v;
        if (b != a) schur_(tk.row, ti.row) += v;
      }
      for (const auto& tk : c.sparse) {
        const double v = sym_inner_sparse(tk.entries, f);
        schur_(ti.row, tk.row) += v;
        schur_(tk.row, ti.row) += v;
      }
    }
    for (std::size_t a = 0; a < c.sparse.size(); ++a) {
      const auto& ti = c.sparse[a];
      for (std::size_t b = a; b < c.sparse.size(); ++b) {
        const auto& tk = c.sparse[b];
        double v = 0.0;
        for (const auto& e : ti.entries) {
          for (const auto& f : tk.entries) v += sparse_pair(e, f, w);
        }
        schur_(ti.row, tk.row) += v;
        if (b != a) schur_(tk.row, ti.row) += v;
      }
    }
  }
  for (const auto& v : lp_) {
    const double d = v.x / v.z;
    for (const auto& [i, ai] : v.col) {
      for (const auto& [k, ak] : v.col) schur_(i, k) += ai * ak * d;
    }
  }
}

bool InteriorPoint::factor() {
  if (nf_ == 0) {
    use_lu_ = false;
    llt_.compute(schur_);
    if (llt_.info() == Eigen::Success) return true;
    // Nearly dependent rows: retry with a tiny diagonal shift.
    RMatrix s = schur_;
    const double shift =
        1e-14 * std::max(1.0, schur_.diagonal().cwiseAbs().maxCoeff());
    s.diagonal().array() += shift;
    llt_.compute(s);
    return llt_.info() == Eigen::Success;
  }
  use_lu_ = true;
  RMatrix k = RMatrix::Zero(m_ + nf_, m_ + nf_);
  k.topLeftCorner(m_, m_) = schur_;
  k.topRightCorner(m_, nf_) = af_;
  k.bottomLeftCorner(nf_, m_) = af_.transpose();
  k.bottomRightCorner(nf_, nf_) =
      -opt_.free_regularization * RMatrix::Identity(nf_, nf_);
  lu_.compute(k);
  return std::isfinite(lu_.rcond()) && lu_.rcond() > 0.0;
}

RVector InteriorPoint::solve_kkt(const RVector& r1, const RVector& r2) const {
  if (!use_lu_) return llt_.solve(r1);
  RVector rhs(m_ + nf_);
  rhs << r1, r2;
  return lu_.solve(rhs);
}

InteriorPoint::Direction InteriorPoint::direction(
    const std::vector<RMatrix>& rc, const RVector& rclp) {
  Direction d;
  const std::size_t nc = cones_.size();
  // h = rp - A(Rc - W Rd W) - A_lp(rc - D rd)
  std::vector<RMatrix> tmp(nc);
  for (std::size_t k = 0; k < nc; ++k) {
    const auto& w = cones_[k].w;
    tmp[k] = rc[k] - symmetrize(w * rd_[k] * w);
  }
  RVector tlp(lp_.size());
  for (std::size_t l = 0; l < lp_.size(); ++l) {
    tlp(l) = rclp(l) - (lp_[l].x / lp_[l].z) * rdlp_(l);
  }
  const RVector h = rp_ - apply_a(tmp, tlp, RVector::Zero(nf_));
  const RVector sol = solve_kkt(h, rf_);
  d.dy = sol.head(m_);
  d.dxf = nf_ > 0 ? RVector(sol.tail(nf_)) : RVector();

  d.dz.resize(nc);
  d.dx.resize(nc);
  for (std::size_t k = 0; k < nc; ++k) {
    const auto& c = cones_[k];
    RMatrix dz = rd_[k];
    for (const auto& t : c.dense) dz.noalias() -= d.dy(t.row) * t.a;
    for (const auto& t : c.sparse) add_sparse(dz, t.entries, -d.dy(t.row));
    d.dx[k] = symmetrize(rc[k] - c.w * dz * c.w);
    d.dz[k] = std::move(dz);
  }
  d.dzlp.resize(lp_.size());
  d.dxlp.resize(lp_.size());
  for (std::size_t l = 0; l < lp_.size(); ++l) {
    double dz = rdlp_(l);
    for (const auto& [i, a] : lp_[l].col) dz -= a * d.dy(i);
    d.dzlp(l) = dz;
    d.dxlp(l) = rclp(l) - (lp_[l].x / lp_[l].z) * dz;
  }
  return d;
}

void InteriorPoint::step_lengths(const Direction& d, double& ap,
                                 double& ad) const {
  double mp = std::numeric_limits<double>::infinity();
  double md = mp;
  for (std::size_t k = 0; k < cones_.size(); ++k) {
    const auto& c = cones_[k];
    const RMatrix dxs = c.ginv * d.dx[k] * c.ginv.transpose();
    const RMatrix dzs = c.g.transpose() * d.dz[k] * c.g;
    mp = std::min(mp, max_step(c.lambda, dxs));
    md = std::min(md, max_step(c.lambda, dzs));
  }
  for (std::size_t l = 0; l < lp_.size(); ++l) {
    if (d.dxlp(l) < 0) mp = std::min(mp, -lp_[l].x / d.dxlp(l));
    if (d.dzlp(l) < 0) md = std::min(md, -lp_[l].z / d.dzlp(l));
  }
  ap = std::min(1.0, opt_.step_fraction * mp);
  ad = std::min(1.0, opt_.step_fraction * md);
}

SdpSolution InteriorPoint::finish(SdpStatus st) {
  SdpSolution s;
  s.status = st;
  const int nb = static_cast<int>(p_.blocks.size());
  s.blocks.resize(nb);
  s.dual_slack.resize(nb);
  for (int j = 0; j < nb; ++j) {
    if (block_cone_[j] >= 0) {
      s.blocks[j] = cones_[block_cone_[j]].x;
      s.dual_slack[j] = obj_scale_ * cones_[block_cone_[j]].z;
    } else {
      s.blocks[j] = RMatrix::Constant(1, 1, lp_[block_lp_[j]].x);
      s.dual_slack[j] = RMatrix::Constant(1, 1, obj_scale_ * lp_[block_lp_[j]].z);
    }
  }
  s.free = xf_;
  s.dual = obj_scale_ * y_.cwiseProduct(row_scale_);
  // Objectives in the caller's units (row scaling leaves b'y invariant).
  s.primal_objective = obj_scale_ * pobj_;
  s.dual_objective = obj_scale_ * dobj_;
  s.primal_residual = relp_;
  s.dual_residual = reld_;
  s.gap = gap_;
  s.iterations = iter_;
  s.history = std::move(history_);
  return s;
}

SdpSolution InteriorPoint::run() {
  const double inf_thr = opt_.infeasibility_threshold;
  for (iter_ = 0; iter_ <= opt_.max_iterations; ++iter_) {
    residuals();
    if (relp_ <= opt_.tolerance && reld_ <= opt_.tolerance &&
        gap_ <= opt_.tolerance) {
      return finish(SdpStatus::Optimal);
    }
    // Farkas-type certificates. A'y + Z = C - Rd, so y / b'y is a ray once
    // ||C - Rd|| is negligible against b'y.
    if (iter_ > 2) {
      double viol = rf_.size() ? (cf_ - rf_).squaredNorm() : 0.0;
      for (std::size_t k = 0; k < cones_.size(); ++k) {
        viol += (cones_[k].c - rd_[k]).squaredNorm();
      }
      for (std::size_t l = 0; l < lp_.size(); ++l) {
        viol += std::pow(lp_[l].c - rdlp_(l), 2);
      }
      viol = std::sqrt(viol);
      if (dobj_ > 0.0 && dobj_ > inf_thr * viol &&
          dobj_ > opt_.tolerance * y_.norm()) {
        SdpSolution s = finish(SdpStatus::Infeasible);
        s.infeasibility_ray = y_.cwiseProduct(row_scale_) / dobj_;
        s.ray_violation = viol / dobj_;
        return s;
      }
      const double pres = (b_ - rp_).norm();
      double xnorm = xf_.squaredNorm();
      for (const auto& c : cones_) xnorm += c.x.squaredNorm();
      for (const auto& v : lp_) xnorm += v.x * v.x;
      xnorm = std::sqrt(xnorm);
      if (pobj_ < 0.0 && -pobj_ > inf_thr * pres &&
          -pobj_ > opt_.tolerance * xnorm) {
        return finish(SdpStatus::Unbounded);
      }
    }
    if (iter_ == opt_.max_iterations) break;
    if (!scale()) break;
    assemble_schur();
    if (!factor()) break;

    const std::size_t nc = cones_.size();
    // Predictor.
    std::vector<RMatrix> rc(nc);
    for (std::size_t k = 0; k < nc; ++k) rc[k] = -cones_[k].x;
    RVector rclp(lp_.size());
    for (std::size_t l = 0; l < lp_.size(); ++l) rclp(l) = -lp_[l].x;
    Direction pred = direction(rc, rclp);
    double ap, ad;
    step_lengths(pred, ap, ad);

    double aff = 0.0;
    for (std::size_t k = 0; k < nc; ++k) {
      aff += (cones_[k].x + ap * pred.dx[k])
                 .cwiseProduct(cones_[k].z + ad * pred.dz[k])
                 .sum();
    }
    for (std::size_t l = 0; l < lp_.size(); ++l) {
      aff += (lp_[l].x + ap * pred.dxlp(l)) * (lp_[l].z + ad * pred.dzlp(l));
    }
    const double mu_aff = aff / total_dim_;
    double sigma = mu_ > 0 ? std::pow(std::max(0.0, mu_aff) / mu_, 3) : 0.0;
    sigma = std::clamp(sigma, 0.0, 1.0);

    // Corrector in the NT-scaled space.
    for (std::size_t k = 0; k < nc; ++k) {
      const auto& c = cones_[k];
      const RMatrix dxs = c.ginv * pred.dx[k] * c.ginv.transpose();
      const RMatrix dzs = c.g.transpose() * pred.dz[k] * c.g;
      RMatrix r = -0.5 * (dxs * dzs + dzs * dxs);
      r.diagonal().array() += sigma * mu_;
      r.diagonal() -= c.lambda.cwiseAbs2();
      for (int a = 0; a < c.dim; ++a) {
        for (int b2 = 0; b2 < c.dim; ++b2) {
          r(a, b2) *= 2.0 / (c.lambda(a) + c.lambda(b2));
        }
      }
      rc[k] = symmetrize(c.g * r * c.g.transpose());
    }
    for (std::size_t l = 0; l < lp_.size(); ++l) {
      const auto& v = lp_[l];
      rclp(l) = (sigma * mu_ - v.x * v.z - pred.dxlp(l) * pred.dzlp(l)) / v.z;
    }
    Direction d = direction(rc, rclp);
    step_lengths(d, ap, ad);

    for (std::size_t k = 0; k < nc; ++k) {
      cones_[k].x = symmetrize(cones_[k].x + ap * d.dx[k]);
      cones_[k].z = symmetrize(cones_[k].z + ad * d.dz[k]);
    }
    for (std::size_t l = 0; l < lp_.size(); ++l) {
      lp_[l].x += ap * d.dxlp(l);
      lp_[l].z += ad * d.dzlp(l);
    }
    y_ += ad * d.dy;
    if (nf_ > 0) xf_ += ap * d.dxf;
    history_.push_back({pobj_, dobj_, relp_, reld_, compl_, ap, ad});
  }
  residuals();
  return finish(SdpStatus::NumericalFailure);
}

}  // namespace

SdpSolution solve(const SdpProblem& p, const SolverOptions& opt) {
  InteriorPoint ipm(p, opt);
  return ipm.run();
}

// ---------------------------------------------------------------------------
// Hermitian front end

HermBlockCoeff HermBlockCoeff::sparse(int block, std::vector<HermEntry> e) {
  HermBlockCoeff c;
  c.block_ = block;
  c.dense_ = false;
  for (auto& t : e) {
    if (t.row > t.col) {
      std::swap(t.row, t.col);
      t.value = std::conj(t.value);
    }
  }
  c.entries_ = std::move(e);
  return c;
}

HermBlockCoeff HermBlockCoeff::dense(int block, CMatrix m) {
  HermBlockCoeff c;
  c.block_ = block;
  c.dense_ = true;
  c.matrix_ = std::move(m);
  return c;
}

double HermBlockCoeff::inner(const CMatrix& x) const {
  if (dense_) return (matrix_.cwiseProduct(x.conjugate())).sum().real();
  double s = 0.0;
  for (const auto& t : entries_) {
    if (t.row == t.col) {
      s += t.value.real() * x(t.row, t.row).real();
    } else {
      // A_rc X_cr + A_cr X_rc = 2 Re(v conj(X_rc)).
      s += 2.0 * (t.value * std::conj(x(t.row, t.col))).real();
    }
  }
  return s;
}

RMatrix embed(const CMatrix& x) {
  const auto n = x.rows();
  RMatrix r(2 * n, 2 * n);
  r.topLeftCorner(n, n) = x.real();
  r.topRightCorner(n, n) = -x.imag();
  r.bottomLeftCorner(n, n) = x.imag();
  r.bottomRightCorner(n, n) = x.real();
  return r;
}

CMatrix deembed(const RMatrix& x) {
  const auto n = x.rows() / 2;
  const RMatrix re = 0.5 * (x.topLeftCorner(n, n) + x.bottomRightCorner(n, n));
  const RMatrix im = 0.5 * (x.bottomLeftCorner(n, n) - x.topRightCorner(n, n));
  CMatrix c(n, n);
  c.real() = re;
  c.imag() = im;
  return c;
}

namespace {

BlockCoeff embed_coeff(const HermBlockCoeff& c, int n,
                       const std::string& where) {
  if (c.is_dense()) {
    const CMatrix& m = c.matrix();
    if (m.rows() != n || m.cols() != n) {
      throw ValidationError(where + ": dense coefficient has wrong size");
    }
    if (hermitian_defect(m) > 1e-12) {
      throw ValidationError(where + ": coefficient is not Hermitian");
    }
    const CMatrix h = 0.5 * (m + m.adjoint());
    return BlockCoeff::dense(c.block(), 0.5 * embed(h));
  }
  std::vector<SymEntry> e;
  e.reserve(4 * c.entries().size());
  for (const auto& t : c.entries()) {
    if (t.row < 0 || t.col >= n) {
      throw ValidationError(where + ": sparse entry out of range");
    }
    const double re = 0.5 * t.value.real();
    const double im = 0.5 * t.value.imag();
    if (t.row == t.col) {
      if (std::abs(t.value.imag()) > 1e-12 * std::max(1.0, std::abs(t.value))) {
        throw ValidationError(where + ": diagonal entry is not real");
      }
      e.push_back({t.row, t.row, re});
      e.push_back({n + t.row, n + t.row, re});
    } else {
      e.push_back({t.row, t.col, re});
      e.push_back({n + t.row, n + t.col, re});
      if (im != 0.0) {
        e.push_back({t.row, n + t.col, -im});
        e.push_back({t.col, n + t.row, im});
      }
    }
  }
  return BlockCoeff::sparse(c.block(), std::move(e));
}

}  // namespace

SdpProblem embed_hermitian(const HermitianSdp& h) {
  SdpProblem p;
  p.free_vars = h.free_vars;
  p.objective_free = h.objective_free;
  for (const auto& b : h.blocks) p.blocks.push_back({b.label, 2 * b.dim});
  auto dim_of = [&](int blk, const std::string& where) {
    if (blk < 0 || blk >= static_cast<int>(h.blocks.size())) {
      throw ValidationError(where + ": block index out of range");
    }
    return h.blocks[blk].dim;
  };
  for (const auto& c : h.objective) {
    p.objective.push_back(
        embed_coeff(c, dim_of(c.block(), "objective"), "objective"));
  }
  p.constraints.reserve(h.constraints.size());
  for (std::size_t i = 0; i < h.constraints.size(); ++i) {
    const auto& hc = h.constraints[i];
    const std::string where = "constraint " + std::to_string(i);
    Constraint c;
    c.rhs = hc.rhs;
    c.sense = hc.sense;
    c.free = hc.free;
    for (const auto& bc : hc.blocks) {
      c.blocks.push_back(embed_coeff(bc, dim_of(bc.block(), where), where));
    }
    p.constraints.push_back(std::move(c));
  }
  return p;
}

HermitianSolution solve_hermitian(const HermitianSdp& h,
                                  const SolverOptions& opt) {
  HermitianSolution out;
  out.raw = solve(embed_hermitian(h), opt);
  out.blocks.reserve(out.raw.blocks.size());
  for (const auto& b : out.raw.blocks) out.blocks.push_back(deembed(b));
  return out;
}

}  // namespace isac::sdp
