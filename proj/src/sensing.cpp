// Copyright 2026 The irs-isac Authors
// SPDX-License-Identifier: Apache-2.0

#include "isac/sensing.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "isac/errors.hpp"
#include "isac/rng.hpp"

namespace isac {

namespace {

enum : std::uint64_t { kSamples = 0, kNoise = 1, kTarget = 2 };

CMatrix cnormal_matrix(Stream& s, Eigen::Index rows, Eigen::Index cols) {
  CMatrix m(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c)
    for (Eigen::Index r = 0; r < rows; ++r) m(r, c) = s.cnormal();
  return m;
}

CMatrix noise_matrix(Eigen::Index rows, Eigen::Index cols, double sigma2,
                     std::uint64_t seed, std::uint64_t trial) {
  Stream s(seed, {kNoise, trial});
  return std::sqrt(sigma2) * cnormal_matrix(s, rows, cols);
}

// Inverse of a Hermitian Gram matrix, or ValidationError naming `what`.
CMatrix gram_inverse(const CMatrix& gram, const char* what) {
  const auto ed = herm_eig(HermitianMatrix(gram));
  const double lmax = ed.values.maxCoeff();
  if (!(lmax > 0.0) || ed.values.minCoeff() <= kPdTolerance * lmax) {
    throw ValidationError(std::string("ls_estimate: ") + what + " is rank deficient");
  }
  return ed.vectors * ed.values.cwiseInverse().asDiagonal() * ed.vectors.adjoint();
}

}  // namespace

TargetResponse random_target(int N, std::uint64_t seed, bool symmetric,
                             int n_scatterers) {
  if (N < 1 || n_scatterers < 1) throw ValidationError("random_target: bad size");
  Stream s(seed, {kTarget});
  TargetResponse t;
  t.symmetric = symmetric;
  t.H = CMatrix::Zero(N, N);
  for (int l = 0; l < n_scatterers; ++l) {
    const cdouble alpha = s.cnormal();
    const double th = std::numbers::pi * (s.uniform() - 0.5);
    const double ps = symmetric ? th : std::numbers::pi * (s.uniform() - 0.5);
    t.H += alpha * ula_response(N, th) * ula_response(N, ps).transpose();
  }
  return t;
}

CMatrix draw_transmit_samples(const TransmitDesign& d, int T, std::uint64_t seed) {
  if (T < 1) throw ValidationError("draw_transmit_samples: T must be >= 1");
  const int M = d.M(), K = d.K();
  Stream s(seed, {kSamples});
  CMatrix W(M, K);
  for (int k = 0; k < K; ++k) W.col(k) = d.w[k];
  const CMatrix S = cnormal_matrix(s, K, T);
  const CMatrix Z = cnormal_matrix(s, M, T);
  CMatrix X = psd_factor(HermitianMatrix(d.R0)) * Z;
  if (K > 0) X += W * S;
  return X;
}

CMatrix echo_channel(const ChannelSet& ch, const ReflectCoeffs& v,
                     const TargetResponse& H) {
  const CMatrix PG = v.v().asDiagonal() * ch.G;  // Phi G
  return PG.transpose() * H.H * PG;
}

EchoBatch simulate_echo(const ChannelSet& ch, const ReflectCoeffs& v,
                        const TransmitDesign& d, const TargetResponse& H, int T,
                        std::uint64_t seed) {
  EchoBatch b;
  b.sigma_r2 = ch.sigma_r2;
  b.X = draw_transmit_samples(d, T, seed);
  b.Y = echo_channel(ch, v, H) * b.X;
  if (ch.sigma_r2 > 0.0) b.Y += noise_matrix(ch.M(), T, ch.sigma_r2, seed, 0);
  return b;
}

TargetResponse ls_estimate(const EchoBatch& batch, const ChannelSet& ch,
                           const ReflectCoeffs& v) {
  const CMatrix PG = v.v().asDiagonal() * ch.G;
  const CMatrix A = PG.transpose();  // M x N
  const CMatrix C = PG * batch.X;    // N x T
  const CMatrix Ai = gram_inverse(A.adjoint() * A, "A = G^T Phi^T");
  const CMatrix Ci = gram_inverse(C * C.adjoint(), "C = Phi G X");
  TargetResponse t;
  t.H = Ai * A.adjoint() * batch.Y * C.adjoint() * Ci;
  return t;
}

MseResult empirical_mse(const ChannelSet& ch, const ReflectCoeffs& v,
                        const TransmitDesign& d, const TargetResponse& H, int T,
                        int n_trials, std::uint64_t seed) {
  if (n_trials < 100) throw ValidationError("empirical_mse: n_trials must be >= 100");
  MseResult r;
  EchoBatch b;
  b.sigma_r2 = ch.sigma_r2;
  b.X = draw_transmit_samples(d, T, seed);
  r.rx_hat = b.X * b.X.adjoint() / T;
  r.crb_at_sample_cov = crb(ch.G, r.rx_hat, ch.sigma_r2, T);
  const CMatrix clean = echo_channel(ch, v, H) * b.X;
  r.trial_error.reserve(n_trials);
  double sum = 0.0;
  for (int t = 0; t < n_trials; ++t) {
    b.Y = clean;
    if (ch.sigma_r2 > 0.0)
      b.Y += noise_matrix(ch.M(), T, ch.sigma_r2, seed, static_cast<std::uint64_t>(t) + 1);
    const double e = (ls_estimate(b, ch, v).H - H.H).squaredNorm();
    r.trial_error.push_back(e);
    sum += e;
  }
  r.mse = sum / n_trials;
  return r;
}

}  // namespace isac
