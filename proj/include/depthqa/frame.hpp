// License: Apache 2.0. See LICENSE file in root directory.
// Copyright(c) 2026 depthqa contributors.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "depthqa/errors.hpp"

namespace depthqa {

// Pixel rectangle, origin top-left, row-major coordinates.
struct Region {
  int x = 0;
  int y = 0;
  int width = 0;
  int height = 0;
};

// Rectangular grid of depth samples in integer millimeters, row-major.
// A value of 0 marks a pixel with no valid measurement. Frames are
// immutable after construction; all operations on them are pure.
class DepthFrame {
 public:
  DepthFrame(int width, int height, std::vector<std::uint16_t> samples);

  int width() const { return width_; }
  int height() const { return height_; }
  std::uint16_t at(int x, int y) const { return samples_[static_cast<std::size_t>(y) * width_ + x]; }
  std::span<const std::uint16_t> samples() const { return samples_; }

  bool operator==(const DepthFrame&) const = default;

 private:
  int width_;
  int height_;
  std::vector<std::uint16_t> samples_;
};

struct FrameStats {
  double mean_mm = 0.0;
  double stddev_mm = 0.0;  // population standard deviation
  int min_mm = 0;
  int max_mm = 0;
  std::int64_t valid_count = 0;
};

// Throws OutOfBounds if the region does not lie inside the frame.
Region resolve_region(const DepthFrame& frame, const std::optional<Region>& region);

// Statistics over the nonzero pixels of the region (whole frame when absent).
// Throws EmptyRegion if the region contains no nonzero pixel.
FrameStats frame_stats(const DepthFrame& frame, const std::optional<Region>& region = std::nullopt);

}  // namespace depthqa
