// License: Apache 2.0. See LICENSE file in root directory.
// Copyright(c) 2026 depthqa contributors.

#pragma once

#include <cstdint>
#include <vector>

#include "depthqa/detrand.hpp"
#include "depthqa/frame.hpp"

namespace depthqa::testing {

inline DepthFrame constant_frame(int width, int height, std::uint16_t value) {
  return DepthFrame(width, height,
                    std::vector<std::uint16_t>(static_cast<std::size_t>(width) * height, value));
}

// Deterministic Fisher-Yates; std::shuffle is implementation-defined.
inline void det_shuffle(std::vector<std::uint16_t>& values, std::uint64_t seed) {
  for (std::size_t i = values.size(); i > 1; --i) {
    const std::uint64_t h = detrand::mix(seed, i);
    std::swap(values[i - 1], values[h % i]);
  }
}

// 70x50 frame reproducing the reference 2 m capture statistics exactly:
// mean 1999.8 mm, population stddev 1.2 mm, min 1996, max 2004.
// Multiset: 40 x 1996, 1340 x 1999, 1920 x 2000, 200 x 2004 (3500 pixels;
// sum 6999300 = 3500*1999.8 and sum of squared deviations 5040 = 3500*1.44).
inline DepthFrame reference_capture_2m() {
  std::vector<std::uint16_t> values;
  values.reserve(3500);
  values.insert(values.end(), 40, 1996);
  values.insert(values.end(), 1340, 1999);
  values.insert(values.end(), 1920, 2000);
  values.insert(values.end(), 200, 2004);
  det_shuffle(values, 0x726566323031366dull);
  return DepthFrame(70, 50, std::move(values));
}

// Uniform random frame in [lo, hi] with an optional fraction of zero pixels.
inline DepthFrame random_frame(int width, int height, std::uint16_t lo, std::uint16_t hi,
                               std::uint64_t seed, double zero_fraction = 0.0) {
  std::vector<std::uint16_t> values(static_cast<std::size_t>(width) * height);
  for (std::size_t i = 0; i < values.size(); ++i) {
    const std::uint64_t h = detrand::mix(seed, i);
    if (zero_fraction > 0.0 && detrand::uniform01(detrand::mix(h, 17)) < zero_fraction) {
      values[i] = 0;
    } else {
      values[i] = static_cast<std::uint16_t>(lo + h % (hi - lo + 1));
    }
  }
  return DepthFrame(width, height, std::move(values));
}

}  // namespace depthqa::testing
