// Copyright 2026 The irs-isac Authors
// SPDX-License-Identifier: Apache-2.0

// Seeded channel realizations for the BS / IRS / CU layout.
//
// Links: BS->IRS (G, N x M, Rician), BS->CU k (h_d[k], M, Rician plus
// log-normal shadowing), IRS->CU k (h_r[k], N, Rayleigh). Large-scale gain is
// L(d) = 10^(k0_db / 10) * d^(-alpha) with d0 = 1 m. The LoS parts come from
// half-wavelength ULAs laid along the y axis (broadside +x) at BS and IRS.

#pragma once

#include <cstdint>
#include <vector>

#include "isac/linalg.hpp"

namespace isac {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

double distance(const Point2& a, const Point2& b);

struct Geometry {
  Point2 bs{0.0, 0.0};
  Point2 irs{4.0, 2.0};
  std::vector<Point2> cus{{50.0, 0.0}, {45.0, -2.0}, {55.0, -2.0}};

  /// Throws ValidationError if any two nodes coincide.
  void validate() const;
};

struct PropagationParams {
  double k0_db = -30.0;
  double alpha_bs_irs = 2.2;
  double alpha_irs_cu = 2.2;
  double alpha_bs_cu = 3.5;
  // Rician K-factors (linear). +infinity means LoS only; 0 means Rayleigh.
  double rician_bs_irs = 0.5;
  double rician_bs_cu = 0.5;
  double rician_irs_cu = 0.0;
  double shadow_std_db = 10.0;

  void validate() const;
};

struct NoiseParams {
  double sigma_k_dbm = -80.0;
  double sigma_r_dbm = -110.0;
};

struct ArrayDims {
  int M = 8;  // BS antennas
  int N = 8;  // IRS elements
  int K = 3;  // users
};

/// Which random components enter a realization. Tests switch parts off to
/// isolate the LoS/diffuse split and the shadowing term.
struct GenOptions {
  bool los = true;
  bool diffuse = true;
  bool shadowing = true;
};

struct ChannelSet {
  CMatrix G;                 // N x M, BS -> IRS
  std::vector<CVector> h_d;  // K x (M), BS -> CU
  std::vector<CVector> h_r;  // K x (N), IRS -> CU
  RVector sigma_k2;          // per-user noise power (W)
  double sigma_r2 = 0.0;     // sensing receiver noise power (W)

  int M() const { return static_cast<int>(G.cols()); }
  int N() const { return static_cast<int>(G.rows()); }
  int K() const { return static_cast<int>(h_d.size()); }

  /// Dimensions, positive noise, and rank(G) = N.
  void validate() const;
};

double db_to_linear(double db);
double dbm_to_watts(double dbm);

/// 10^(k0_db/10) * d^(-alpha). Throws ValidationError for d <= 0.
double path_loss(double d, double alpha, double k0_db);

/// Half-wavelength ULA response exp(j pi m sin(theta)), m = 0..n-1.
CVector ula_response(int n, double theta);

/// One realization. Deterministic in (seed); each link draws from its own
/// sub-stream so adding users or trials never shifts other links.
/// Regenerates G (fresh sub-stream) if it is rank deficient; throws
/// NumericalError after 10 attempts.
ChannelSet gen_channels(const Geometry& geom, const PropagationParams& params,
                        const ArrayDims& dims, const NoiseParams& noise,
                        std::uint64_t seed, const GenOptions& opt = {});

/// FNV-1a over the raw bytes of every entry; equal digests mean bit-equal
/// channel sets.
std::uint64_t digest(const ChannelSet& ch);

}  // namespace isac
