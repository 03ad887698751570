// License: Apache 2.0. See LICENSE file in root directory.
// Copyright(c) 2026 depthqa contributors.

#include "depthqa/frame.hpp"

#include <cmath>
#include <string>

namespace depthqa {

DepthFrame::DepthFrame(int width, int height, std::vector<std::uint16_t> samples)
    : width_(width), height_(height), samples_(std::move(samples)) {
  if (width_ < 2 || height_ < 2) {
    throw DimensionMismatch("frame dimensions must be at least 2x2, got " +
                            std::to_string(width_) + "x" + std::to_string(height_));
  }
  if (samples_.size() != static_cast<std::size_t>(width_) * height_) {
    throw DimensionMismatch("sample count " + std::to_string(samples_.size()) +
                            " does not match " + std::to_string(width_) + "x" +
                            std::to_string(height_));
  }
}

Region resolve_region(const DepthFrame& frame, const std::optional<Region>& region) {
  if (!region) {
    return Region{0, 0, frame.width(), frame.height()};
  }
  const Region r = *region;
  if (r.width <= 0 || r.height <= 0 || r.x < 0 || r.y < 0 || r.x + r.width > frame.width() ||
      r.y + r.height > frame.height()) {
    throw OutOfBounds("region " + std::to_string(r.x) + "," + std::to_string(r.y) + "," +
                      std::to_string(r.width) + "," + std::to_string(r.height) +
                      " exceeds frame " + std::to_string(frame.width()) + "x" +
                      std::to_string(frame.height()));
  }
  return r;
}

FrameStats frame_stats(const DepthFrame& frame, const std::optional<Region>& region) {
  const Region r = resolve_region(frame, region);

  FrameStats stats;
  stats.min_mm = 65536;
  stats.max_mm = -1;
  double sum = 0.0;
  for (int y = r.y; y < r.y + r.height; ++y) {
    for (int x = r.x; x < r.x + r.width; ++x) {
      const std::uint16_t v = frame.at(x, y);
      if (v == 0) continue;
      ++stats.valid_count;
      sum += v;
      stats.min_mm = std::min<int>(stats.min_mm, v);
      stats.max_mm = std::max<int>(stats.max_mm, v);
    }
  }
  if (stats.valid_count == 0) {
    throw EmptyRegion("region contains no nonzero pixel");
  }
  stats.mean_mm = sum / static_cast<double>(stats.valid_count);

  double sq = 0.0;
  for (int y = r.y; y < r.y + r.height; ++y) {
    for (int x = r.x; x < r.x + r.width; ++x) {
      const std::uint16_t v = frame.at(x, y);
      if (v == 0) continue;
      const double d = v - stats.mean_mm;
      sq += d * d;
    }
  }
  stats.stddev_mm = std::sqrt(sq / static_cast<double>(stats.valid_count));
  return stats;
}

}  // namespace depthqa
