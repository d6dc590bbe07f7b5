// Copyright 2026 The irs-isac Authors
// SPDX-License-Identifier: Apache-2.0

// System-level metrics: combined channels, SINR, transmit power, the
// extended-target CRB and the lifted quadratic forms of the IRS phases.

#pragma once

#include <vector>

#include "isac/channel.hpp"
#include "isac/linalg.hpp"

namespace isac {

/// Type I receivers see the dedicated sensing signal as interference;
/// Type II receivers cancel it before decoding.
enum class ReceiverType { I, II };

const char* to_string(ReceiverType t);
/// Accepts "I" / "II". Throws ValidationError otherwise.
ReceiverType parse_receiver_type(const std::string& s);

struct TransmitDesign {
  std::vector<CVector> w;  // K beamformers of length M
  CMatrix R0;              // M x M sensing covariance

  int M() const { return static_cast<int>(R0.rows()); }
  int K() const { return static_cast<int>(w.size()); }
  /// R_x = sum_k w_k w_k^H + R0.
  CMatrix rx() const;
};

/// Unit-modulus reflection coefficients v_n = exp(j phi_n), stored as phases.
class ReflectCoeffs {
 public:
  ReflectCoeffs() = default;
  explicit ReflectCoeffs(RVector phases) : phases_(std::move(phases)) {}
  /// Keeps only the argument of each entry.
  static ReflectCoeffs from_vector(const CVector& v);
  static ReflectCoeffs ones(int n) { return ReflectCoeffs(RVector::Zero(n)); }

  int size() const { return static_cast<int>(phases_.size()); }
  const RVector& phases() const { return phases_; }
  CVector v() const;
  /// diag(v).
  CMatrix phi() const;

 private:
  RVector phases_;
};

struct SystemParams {
  double P0 = 1.0;      // W
  RVector gamma;        // linear SINR thresholds, one per user
  int T = 256;

  /// Uniform threshold given in dB.
  static SystemParams from_db(double power_dbm, double gamma_db, int K, int T);
  void validate(int K) const;
};

double db_to_gamma(double db);

/// h_k = h_d,k + G^H Phi^H h_r,k for every user.
std::vector<CVector> combined_channel(const ChannelSet& ch,
                                      const ReflectCoeffs& v);

/// Linear SINR per user.
RVector sinr(const TransmitDesign& d, const std::vector<CVector>& h,
             const RVector& sigma_k2, ReceiverType type);

/// (sigma_R^2 / T) tr((G R_x G^H)^{-1}) tr((G G^H)^{-1}).
/// Throws NearSingular naming the Gram factor that failed.
double crb(const CMatrix& G, const CMatrix& rx, double sigma_r2, int T);

double total_power(const TransmitDesign& d);

/// Lifted forms in vt = [v; 1]:
///   vt^H Q[k][i] vt = |h_k^H w_i|^2,   vt^H Q0[k] vt = h_k^H R0 h_k.
struct LiftedQuadratics {
  std::vector<std::vector<CMatrix>> Q;  // Q[k][i], (N+1) x (N+1)
  std::vector<CMatrix> Q0;              // Q0[k]
};

LiftedQuadratics reflect_quadratics(const ChannelSet& ch,
                                    const TransmitDesign& d);

/// Minimum over users of the SINR constraint slack
///   |h_k^H w_k|^2 / Gamma_k - sum_{i != k} |h_k^H w_i|^2
///   - [type I] h_k^H R0 h_k - sigma_k^2.
double min_sinr_slack(const TransmitDesign& d, const std::vector<CVector>& h,
                      const RVector& sigma_k2, const RVector& gamma,
                      ReceiverType type);

}  // namespace isac
