// Copyright 2026 The irs-isac Authors
// SPDX-License-Identifier: Apache-2.0

// Echo simulation through the IRS and least-squares estimation of the
// target response matrix H:
//
//   y_R(t) = G^T Phi^T H Phi G x(t) + n_R(t),   n_R ~ CN(0, sigma_R^2 I).
//
// With A = G^T Phi^T and C = Phi G X the LS estimate is
// (A^H A)^{-1} A^H Y C^H (C C^H)^{-1}; for fixed X its MSE is exactly
// (sigma_R^2 / T) tr((G Rhat G^H)^{-1}) tr((G G^H)^{-1}), Rhat = X X^H / T.

#pragma once

#include <cstdint>
#include <vector>

#include "isac/channel.hpp"
#include "isac/system.hpp"

namespace isac {

struct TargetResponse {
  CMatrix H;  // N x N
  bool symmetric = false;
};

/// Sum of `n_scatterers` rank-one terms alpha_l a(theta_l) b(psi_l)^T with
/// CN(0, 1) gains and uniform angles on (-pi/2, pi/2). With `symmetric`,
/// b = a so that H = H^T.
TargetResponse random_target(int N, std::uint64_t seed, bool symmetric = false,
                             int n_scatterers = 3);

struct EchoBatch {
  CMatrix X;  // M x T transmitted samples
  CMatrix Y;  // M x T received echo
  double sigma_r2 = 0.0;

  int T() const { return static_cast<int>(X.cols()); }
};

/// x(t) = sum_k w_k s_k(t) + F z(t) with F F^H = R0, s_k and z i.i.d.
/// CN(0, 1). Samples come from sub-stream (seed, 0).
CMatrix draw_transmit_samples(const TransmitDesign& d, int T, std::uint64_t seed);

/// G^T Phi^T H Phi G.
CMatrix echo_channel(const ChannelSet& ch, const ReflectCoeffs& v,
                     const TargetResponse& H);

/// Full batch: transmit samples as above plus noise from sub-stream (seed, 1).
EchoBatch simulate_echo(const ChannelSet& ch, const ReflectCoeffs& v,
                        const TransmitDesign& d, const TargetResponse& H, int T,
                        std::uint64_t seed);

/// Throws ValidationError naming the rank-deficient factor (A or C).
TargetResponse ls_estimate(const EchoBatch& batch, const ChannelSet& ch,
                           const ReflectCoeffs& v);

struct MseResult {
  double mse = 0.0;                 // mean ||Hhat - H||_F^2
  std::vector<double> trial_error;  // per-trial squared error
  double crb_at_sample_cov = 0.0;   // crb(G, X X^H / T, sigma_R^2, T)
  CMatrix rx_hat;
};

/// Monte-Carlo MSE with X fixed across trials (drawn once from `seed`) and
/// fresh noise per trial. Requires n_trials >= 100.
MseResult empirical_mse(const ChannelSet& ch, const ReflectCoeffs& v,
                        const TransmitDesign& d, const TargetResponse& H, int T,
                        int n_trials, std::uint64_t seed);

}  // namespace isac
