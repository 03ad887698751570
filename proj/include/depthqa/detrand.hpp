// License: Apache 2.0. See LICENSE file in root directory.
// Copyright(c) 2026 depthqa contributors.

#pragma once

#include <cmath>
#include <cstdint>

// Counter-based deterministic draws. Every random quantity in the simulator
// and the Monte Carlo harness is a pure function of (seed, counter...), so
// results are reproducible bit-for-bit regardless of evaluation order.

namespace depthqa::detrand {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

constexpr std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
  return splitmix64(a ^ (b + 0x9E3779B97F4A7C15ull + (a << 6) + (a >> 2)));
}

// Uniform double in [0, 1), 53 random bits.
inline double uniform01(std::uint64_t h) {
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

// Standard normal via Box-Muller from two hash values.
inline double gaussian(std::uint64_t h1, std::uint64_t h2) {
  const double u1 = 1.0 - uniform01(h1);  // (0, 1]
  const double u2 = uniform01(h2);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

}  // namespace depthqa::detrand
