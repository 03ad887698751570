// License: Apache 2.0. See LICENSE file in root directory.
// Copyright(c) 2026 depthqa contributors.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "depthqa/frame.hpp"
#include "depthqa/metrics.hpp"

namespace depthqa {

// Synthetic ToF-style depth sensor. Pinhole projection at 512x424 over a
// 70x60 degree field of view; depth is the z coordinate of the hit point.
// Noise terms, per pixel:
//   - systematic bias by accuracy region of the hit point,
//   - ring term  -ring_amplitude * (r_px / r_max)^2  about the principal point,
//   - Gaussian noise, sigma scaled linearly with distance,
//   - integer temporal jitter bounded by +-jitter_span/2, a pure function of
//     (seed, pixel, frame index), so series are reproducible bit for bit.
// Pixels whose hit is out of range or off every surface render 0; target
// pixels next to background are zeroed edge_width_px deep to emulate the
// zero contour.
struct NoiseModel {
  double accuracy_offset_green_mm = 1.0;
  double accuracy_offset_yellow_mm = 3.0;
  double accuracy_offset_red_mm = 5.0;
  double pixel_sigma_mm = 1.2;          // at sigma_reference_mm
  double sigma_reference_mm = 2000.0;
  int jitter_span_mm = 6;               // even, >= 0
  int edge_width_px = 2;                // in [0, 3]
  double ring_amplitude_mm = 2.0;
  AccuracyCone cone;                    // carries range limits and FOV bands
  int width_px = 512;
  int height_px = 424;
  std::uint64_t seed = 0;

  double min_range_mm() const { return cone.min_range_mm; }
  double max_range_mm() const { return cone.max_range_mm; }
  void validate() const;  // throws InvalidModel
};

// Planar rectangle (or infinite wall) in the sensor frame. An optional
// constant-depth backdrop gives off-target rays something to hit, the way a
// room wall sits behind a hand-held test plate.
struct PlanarTarget {
  std::array<double, 3> center_mm{0.0, 0.0, 2000.0};
  std::array<double, 3> normal{0.0, 0.0, -1.0};
  std::optional<std::array<double, 2>> extent_mm;  // width x height; absent = infinite
  std::optional<double> backdrop_mm;

  void validate() const;
};

// Throws NoIntersection when no ray hits the target plane in front of the
// sensor (range gating alone yields an all-zero frame instead).
DepthFrame render_frame(const PlanarTarget& target, const NoiseModel& model, int frame_index);

// frame_count renders with a shared seed; values across frames differ only
// by the jitter term. Requires frame_count >= 2.
std::vector<DepthFrame> render_series(const PlanarTarget& target, const NoiseModel& model,
                                      int frame_count);

}  // namespace depthqa
