// License: Apache 2.0. See LICENSE file in root directory.
// Copyright(c) 2026 depthqa contributors.

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "depthqa/frame.hpp"

namespace depthqa {

// Signed difference between the true distance and the mean measured depth
// over the region. Positive means the sensor under-reads.
double depth_accuracy(const DepthFrame& frame, const std::optional<Region>& region,
                      double true_distance_mm);

struct ResolutionStats {
  double min_mm = 0.0;
  double mean_mm = 0.0;
  double max_mm = 0.0;
  double stddev_mm = 0.0;
  std::size_t pair_count = 0;
};

// Absolute depth differences over all 4-neighbor pixel pairs that are both
// nonzero inside the region. min_mm is the minimum over the full multiset,
// zero differences included.
ResolutionStats depth_resolution(const DepthFrame& frame,
                                 const std::optional<Region>& region = std::nullopt);

struct EntropyMap {
  int width = 0;
  int height = 0;
  std::vector<double> entropy_bits;  // row-major over the region, NaN where invalid
  double mean_bits = 0.0;
  double stddev_bits = 0.0;
  double max_bits = 0.0;
  std::size_t valid_count = 0;

  double at(int x, int y) const { return entropy_bits[static_cast<std::size_t>(y) * width + x]; }
};

// Shannon entropy, in bits, of the empirical distribution of the T-1
// frame-to-frame depth differences at each pixel. A pixel is valid only if
// it is nonzero in every frame. Requires T >= 2 frames of equal dimensions.
EntropyMap depth_entropy(std::span<const DepthFrame> series,
                         const std::optional<Region>& region = std::nullopt);

struct EdgeNoiseStats {
  std::size_t contour_pixel_count = 0;  // zero pixels 4-adjacent to a nonzero pixel
  int max_width_px = 0;
  std::map<int, std::size_t> width_histogram;  // run width -> number of runs
};

// Zero-contour analysis. Runs of consecutive zeros are scanned along every
// row and column; a run counts if it is delimited by a nonzero pixel on both
// sides, or by a nonzero pixel on one side and the frame edge on the other.
// Runs spanning edge to edge carry no width information and are ignored.
// Throws AllZeroFrame when the frame has no nonzero pixel.
EdgeNoiseStats edge_noise(const DepthFrame& frame);

struct RadialProfile {
  std::vector<double> bin_radius_px;   // bin centers, increasing
  std::vector<double> mean_depth_mm;   // one entry per occupied bin
  std::vector<std::size_t> bin_count;  // valid pixels per occupied bin
  double center_x_px = 0.0;
  double center_y_px = 0.0;
};

// Mean depth binned by pixel distance from the valid-pixel centroid.
// Bins with no valid pixel are omitted. Throws EmptyFrame.
RadialProfile structural_noise(const DepthFrame& frame, int bin_width_px = 5);

enum class AccuracyRegion { Green, Yellow, Red, OutOfView };

const char* to_string(AccuracyRegion region);

// Elliptical-cone partition of the view frustum into accuracy bands.
// Defaults: 70x60 degree full field of view, green up to 2 m, yellow up to
// 3 m, red up to the 4 m range limit.
struct AccuracyCone {
  double horizontal_half_angle_deg = 35.0;
  double vertical_half_angle_deg = 30.0;
  double green_max_mm = 2000.0;
  double yellow_max_mm = 3000.0;
  double min_range_mm = 500.0;
  double max_range_mm = 4000.0;

  void validate() const;
};

// Classify a point given in the sensor frame, optical axis +z. Total function.
AccuracyRegion classify_region(double x_mm, double y_mm, double z_mm,
                               const AccuracyCone& cone = {});

}  // namespace depthqa
