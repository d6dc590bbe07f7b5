// Copyright 2026 The irs-isac Authors
// SPDX-License-Identifier: Apache-2.0

#include "isac/rng.hpp"

#include <cmath>
#include <numbers>

namespace isac {

namespace {
constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t stream_key(std::uint64_t seed,
                         std::initializer_list<std::uint64_t> ids) {
  std::uint64_t k = splitmix64_mix(seed + kGamma);
  for (auto id : ids) k = splitmix64_mix(k ^ splitmix64_mix(id + kGamma));
  return k;
}

std::uint64_t Stream::next_u64() {
  ++counter_;
  return splitmix64_mix(key_ + counter_ * kGamma);
}

double Stream::uniform() {
  // (top 53 bits + 0.5) / 2^53 never hits 0 or 1.
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double Stream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double t = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(t);
  has_spare_ = true;
  return r * std::cos(t);
}

cdouble Stream::cnormal() {
  const double re = normal();
  const double im = normal();
  return cdouble(re, im) * std::numbers::sqrt2 * 0.5;
}

}  // namespace isac
