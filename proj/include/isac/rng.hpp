// Copyright 2026 The irs-isac Authors
// SPDX-License-Identifier: Apache-2.0

// Counter-based SplitMix64 streams.
//
// Output k of a stream with key K is mix(K + (k + 1) * 0x9E3779B97F4A7C15),
// where mix is the SplitMix64 finalizer with multipliers 0xBF58476D1CE4E5B9
// and 0x94D049BB133111EB and shifts 30, 27, 31. Uniforms take the top 53
// bits; normals use Box-Muller on pairs of uniforms (cosine branch first).
// Every realization is therefore reproducible from (seed, stream ids) on any
// platform, independent of the standard library's distributions.

#pragma once

#include <cstdint>
#include <initializer_list>

#include "isac/linalg.hpp"

namespace isac {

std::uint64_t splitmix64_mix(std::uint64_t z);

/// Sub-stream key for (seed, id_1, ..., id_n).
std::uint64_t stream_key(std::uint64_t seed,
                         std::initializer_list<std::uint64_t> ids);

class Stream {
 public:
  explicit Stream(std::uint64_t key) : key_(key) {}
  Stream(std::uint64_t seed, std::initializer_list<std::uint64_t> ids)
      : key_(stream_key(seed, ids)) {}

  std::uint64_t next_u64();
  /// Uniform on the open interval (0, 1).
  double uniform();
  double normal();
  /// Circularly symmetric complex Gaussian with unit variance.
  cdouble cnormal();
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace isac
