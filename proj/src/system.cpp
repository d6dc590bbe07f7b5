// Copyright 2026 The irs-isac Authors
// SPDX-License-Identifier: Apache-2.0

#include "isac/system.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "isac/errors.hpp"

namespace isac {

const char* to_string(ReceiverType t) {
  return t == ReceiverType::I ? "I" : "II";
}

ReceiverType parse_receiver_type(const std::string& s) {
  if (s == "I") return ReceiverType::I;
  if (s == "II") return ReceiverType::II;
  throw ValidationError("receiver type must be \"I\" or \"II\", got \"" + s +
                        "\"");
}

CMatrix TransmitDesign::rx() const {
  CMatrix r = R0;
  for (const auto& wk : w) r.noalias() += wk * wk.adjoint();
  return r;
}

ReflectCoeffs ReflectCoeffs::from_vector(const CVector& v) {
  RVector ph(v.size());
  for (Eigen::Index n = 0; n < v.size(); ++n) ph(n) = std::arg(v(n));
  return ReflectCoeffs(std::move(ph));
}

CVector ReflectCoeffs::v() const {
  CVector out(phases_.size());
  for (Eigen::Index n = 0; n < phases_.size(); ++n)
    out(n) = std::polar(1.0, phases_(n));
  return out;
}

CMatrix ReflectCoeffs::phi() const { return v().asDiagonal(); }

double db_to_gamma(double db) { return std::pow(10.0, db / 10.0); }

SystemParams SystemParams::from_db(double power_dbm, double gamma_db, int K,
                                   int T) {
  SystemParams p;
  p.P0 = dbm_to_watts(power_dbm);
  p.gamma = RVector::Constant(K, db_to_gamma(gamma_db));
  p.T = T;
  return p;
}

void SystemParams::validate(int K) const {
  if (!(P0 > 0.0) || !std::isfinite(P0)) throw ValidationError("P0 must be > 0");
  if (gamma.size() != K) throw ValidationError("gamma: need one threshold per user");
  if (K > 0 && !(gamma.minCoeff() > 0.0)) throw ValidationError("gamma must be > 0");
  if (T < 1) throw ValidationError("T must be >= 1");
}

std::vector<CVector> combined_channel(const ChannelSet& ch,
                                      const ReflectCoeffs& v) {
  if (v.size() != ch.N()) throw ValidationError("combined_channel: |v| != N");
  const CVector vv = v.v();
  std::vector<CVector> h;
  h.reserve(ch.h_d.size());
  for (int k = 0; k < ch.K(); ++k) {
    // Phi^H h_r = conj(v) .* h_r
    const CVector t = vv.conjugate().cwiseProduct(ch.h_r[k]);
    h.push_back(ch.h_d[k] + ch.G.adjoint() * t);
  }
  return h;
}

RVector sinr(const TransmitDesign& d, const std::vector<CVector>& h,
             const RVector& sigma_k2, ReceiverType type) {
  const int K = d.K();
  if (static_cast<int>(h.size()) != K || sigma_k2.size() != K) {
    throw ValidationError("sinr: user count mismatch");
  }
  RVector g(K);
  for (int k = 0; k < K; ++k) {
    double interf = sigma_k2(k);
    double sig = 0.0;
    for (int i = 0; i < K; ++i) {
      const double p = std::norm(h[k].dot(d.w[i]));
      if (i == k) sig = p; else interf += p;
    }
    if (type == ReceiverType::I) interf += h[k].dot(d.R0 * h[k]).real();
    g(k) = sig / interf;
  }
  return g;
}

double crb(const CMatrix& G, const CMatrix& rx, double sigma_r2, int T) {
  if (G.cols() != rx.rows() || rx.rows() != rx.cols()) {
    throw ValidationError("crb: dimension mismatch");
  }
  if (T < 1) throw ValidationError("crb: T must be >= 1");
  double a = 0.0, b = 0.0;
  try {
    a = trace_inv(HermitianMatrix(G * rx * G.adjoint()));
  } catch (const NearSingular&) {
    throw NearSingular("crb: G R_x G^H is singular");
  }
  try {
    b = trace_inv(HermitianMatrix(G * G.adjoint()));
  } catch (const NearSingular&) {
    throw NearSingular("crb: G G^H is singular");
  }
  return sigma_r2 / T * a * b;
}

double total_power(const TransmitDesign& d) {
  double p = d.R0.size() ? d.R0.diagonal().real().sum() : 0.0;
  for (const auto& wk : d.w) p += wk.squaredNorm();
  return p;
}

LiftedQuadratics reflect_quadratics(const ChannelSet& ch,
                                    const TransmitDesign& d) {
  // h_k^H x = vt^T b with b = [conj(h_r) .* (G x); h_d^H x], so
  // |h_k^H x|^2 = vt^H conj(b) conj(b)^H vt.
  const int N = ch.N(), K = ch.K();
  LiftedQuadratics out;
  out.Q.assign(K, std::vector<CMatrix>(K));
  out.Q0.resize(K);
  for (int k = 0; k < K; ++k) {
    CMatrix B(N + 1, ch.M());
    B.topRows(N) = ch.h_r[k].conjugate().asDiagonal() * ch.G;
    B.row(N) = ch.h_d[k].adjoint();
    const CMatrix Bc = B.conjugate();
    for (int i = 0; i < K; ++i) {
      const CVector a = Bc * d.w[i].conjugate();
      out.Q[k][i] = a * a.adjoint();
    }
    out.Q0[k] = Bc * d.R0.conjugate() * Bc.adjoint();
  }
  return out;
}

double min_sinr_slack(const TransmitDesign& d, const std::vector<CVector>& h,
                      const RVector& sigma_k2, const RVector& gamma,
                      ReceiverType type) {
  double worst = std::numeric_limits<double>::infinity();
  for (int k = 0; k < d.K(); ++k) {
    double s = -sigma_k2(k);
    for (int i = 0; i < d.K(); ++i) {
      const double p = std::norm(h[k].dot(d.w[i]));
      s += i == k ? p / gamma(k) : -p;
    }
    if (type == ReceiverType::I) s -= h[k].dot(d.R0 * h[k]).real();
    worst = std::min(worst, s);
  }
  return worst;
}

}  // namespace isac
