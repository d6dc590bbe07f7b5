// Copyright 2026 The irs-isac Authors
// SPDX-License-Identifier: Apache-2.0

// Joint transmit / reflective beamforming for CRB minimization.
//
// All optimization runs in normalized units: P0 -> 1 and noise divided by
// max_k sigma_k^2 (user channels scaled alike), which leaves every SINR
// unchanged. The trace-inverse objective is written in the coordinates of
// the SVD of G, scaled so that the sensing-only optimum sits at
// G R G^H ~ identity; the SDP objective is then the ratio
// tr((G R G^H)^{-1}) / sensing_only_bound(G, P0). Designs returned by this
// module are in physical units.

#pragma once

#include <cstdint>
#include <vector>

#include "isac/channel.hpp"
#include "isac/sdp.hpp"
#include "isac/system.hpp"

namespace isac {

struct AoConfig {
  int max_outer_iters = 30;
  double rel_tol = 1e-3;
  int n_randomizations = 256;
  int max_v_resamples = 50;
  ReceiverType receiver_type = ReceiverType::I;

  void validate() const;
};

enum class AoStatus { Converged, IterCap, Infeasible };
const char* to_string(AoStatus s);

struct AoSolution {
  TransmitDesign design;
  ReflectCoeffs v;
  std::vector<double> crb_trace;
  AoStatus status = AoStatus::Infeasible;
  int outer_iters = 0;

  /// Last CRB, or +inf when infeasible.
  double final_crb() const;
};

struct TransmitResult {
  bool feasible = false;
  sdp::SdpStatus sdp_status = sdp::SdpStatus::NumericalFailure;
  TransmitDesign design;          // rank-one reconstruction
  std::vector<CMatrix> W_relaxed;  // SDP optimum
  CMatrix R0_relaxed;
  /// tr((G R_x G^H)^{-1}) at the SDP optimum, physical units.
  double objective = 0.0;
};

/// Transmit SDR with fixed phases. Not feasible (feasible = false) when the
/// SDP is infeasible; throws NumericalError on solver failure.
TransmitResult transmit_step(const ChannelSet& ch, const ReflectCoeffs& v,
                             const SystemParams& params, ReceiverType type);

struct RankOne {
  std::vector<CVector> w;
  CMatrix R0;
};

/// w_k = W_k h_k / sqrt(h_k^H W_k h_k),
/// R0 = R0~ + sum W_k~ - sum w_k w_k^H.
/// h_k^H w_k is real and positive. Throws NumericalError("degenerate beam")
/// when h_k^H W_k h_k <= kPdTolerance * ||h_k||^2 * tr(W_k).
RankOne rank_one_reconstruct(const std::vector<CMatrix>& W, const CMatrix& R0,
                             const std::vector<CVector>& h);

struct ReflectResult {
  ReflectCoeffs v;
  double min_slack = 0.0;            // exact, physical units
  double incumbent_slack = 0.0;
  sdp::SdpStatus sdp_status = sdp::SdpStatus::NumericalFailure;
};

/// Reflective SDR with Gaussian randomization. The candidate with the
/// largest minimum SINR slack among the randomized draws, the principal
/// eigenvector rounding and the incumbent is returned. `rng_key` selects the
/// randomization stream.
ReflectResult reflective_step(const ChannelSet& ch, const TransmitDesign& d,
                              const ReflectCoeffs& incumbent,
                              const SystemParams& params, ReceiverType type,
                              int n_randomizations, std::uint64_t rng_key);

/// Uniform phases on (0, 2 pi] for resample attempt `attempt`.
ReflectCoeffs random_phases(int n, std::uint64_t seed, int attempt);

/// Algorithm: transmit step from random phases, then alternate reflective
/// and transmit steps until the relative CRB decrease drops below rel_tol.
/// If none of the max_v_resamples draws is feasible, the minimum-power
/// phases of min_power_beams() are tried before giving up.
AoSolution alternating_optimize(const ChannelSet& ch,
                                const SystemParams& params,
                                const AoConfig& ao, std::uint64_t seed);

/// One transmit step under the first random phase draw of AO (no
/// resampling); infeasible if that draw is.
AoSolution benchmark_transmit_only(const ChannelSet& ch,
                                   const SystemParams& params,
                                   const AoConfig& ao, std::uint64_t seed);

struct PowerMinResult {
  bool feasible = false;
  std::vector<CVector> w;  // information beams, physical units
  ReflectCoeffs v;
  double power = 0.0;
  int alternations = 0;
};

/// Minimum-power information beams under sensing-free SINR constraints,
/// alternating with the reflective step (at most 20 alternations).
PowerMinResult min_power_beams(const ChannelSet& ch, const SystemParams& params,
                               const AoConfig& ao, std::uint64_t seed);

/// Separate design: minimum-power information beams first, then scaling
/// t = alpha^2 >= 1 and a sensing covariance R0 from one SDP.
AoSolution benchmark_separate(const ChannelSet& ch, const SystemParams& params,
                              const AoConfig& ao, std::uint64_t seed);

/// Sensing-only optimum (no SINR constraints):
/// min tr((G R G^H)^{-1}) s.t. tr(R) <= P0 equals (sum_i s_i^{-1/2})^2 / P0,
/// s_i the eigenvalues of G G^H.
double sensing_only_bound(const CMatrix& G, double P0);

}  // namespace isac
