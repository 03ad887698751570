// License: Apache 2.0. See LICENSE file in root directory.
// Copyright(c) 2026 depthqa contributors.

#include "depthqa/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace depthqa {

double depth_accuracy(const DepthFrame& frame, const std::optional<Region>& region,
                      double true_distance_mm) {
  const FrameStats stats = frame_stats(frame, region);
  return true_distance_mm - stats.mean_mm;
}

ResolutionStats depth_resolution(const DepthFrame& frame, const std::optional<Region>& region) {
  const Region r = resolve_region(frame, region);

  ResolutionStats out;
  out.min_mm = std::numeric_limits<double>::infinity();
  double sum = 0.0;
  bool any_valid_pixel = false;

  const auto visit_pair = [&](std::uint16_t a, std::uint16_t b) {
    if (a == 0 || b == 0) return;
    const double d = std::abs(static_cast<double>(a) - static_cast<double>(b));
    out.min_mm = std::min(out.min_mm, d);
    out.max_mm = std::max(out.max_mm, d);
    sum += d;
    ++out.pair_count;
  };

  for (int y = r.y; y < r.y + r.height; ++y) {
    for (int x = r.x; x < r.x + r.width; ++x) {
      const std::uint16_t v = frame.at(x, y);
      if (v != 0) any_valid_pixel = true;
      if (x + 1 < r.x + r.width) visit_pair(v, frame.at(x + 1, y));
      if (y + 1 < r.y + r.height) visit_pair(v, frame.at(x, y + 1));
    }
  }
  if (!any_valid_pixel) {
    throw EmptyRegion("region contains no nonzero pixel");
  }
  if (out.pair_count == 0) {
    throw NoAdjacentPairs("no adjacent nonzero pixel pair in region");
  }
  out.mean_mm = sum / static_cast<double>(out.pair_count);

  double sq = 0.0;
  for (int y = r.y; y < r.y + r.height; ++y) {
    for (int x = r.x; x < r.x + r.width; ++x) {
      const std::uint16_t v = frame.at(x, y);
      const auto accum = [&](std::uint16_t b) {
        if (v == 0 || b == 0) return;
        const double d = std::abs(static_cast<double>(v) - static_cast<double>(b)) - out.mean_mm;
        sq += d * d;
      };
      if (x + 1 < r.x + r.width) accum(frame.at(x + 1, y));
      if (y + 1 < r.y + r.height) accum(frame.at(x, y + 1));
    }
  }
  out.stddev_mm = std::sqrt(sq / static_cast<double>(out.pair_count));
  return out;
}

EntropyMap depth_entropy(std::span<const DepthFrame> series, const std::optional<Region>& region) {
  if (series.size() < 2) {
    throw TooFewFrames("depth entropy needs at least 2 frames, got " +
                       std::to_string(series.size()));
  }
  const DepthFrame& first = series.front();
  for (const DepthFrame& f : series) {
    if (f.width() != first.width() || f.height() != first.height()) {
      throw DimensionMismatch("frames in the series differ in dimensions");
    }
  }
  const Region r = resolve_region(first, region);
  const std::size_t diff_count = series.size() - 1;

  EntropyMap map;
  map.width = r.width;
  map.height = r.height;
  map.entropy_bits.assign(static_cast<std::size_t>(r.width) * r.height,
                          std::numeric_limits<double>::quiet_NaN());

  std::vector<int> diffs(diff_count);
  double sum = 0.0, sq = 0.0;
  for (int y = 0; y < r.height; ++y) {
    for (int x = 0; x < r.width; ++x) {
      bool valid = true;
      for (const DepthFrame& f : series) {
        if (f.at(r.x + x, r.y + y) == 0) {
          valid = false;
          break;
        }
      }
      if (!valid) continue;

      for (std::size_t t = 0; t + 1 < series.size(); ++t) {
        diffs[t] = static_cast<int>(series[t + 1].at(r.x + x, r.y + y)) -
                   static_cast<int>(series[t].at(r.x + x, r.y + y));
      }
      // frequencies of each distinct difference value
      std::sort(diffs.begin(), diffs.end());
      double h = 0.0;
      const double n = static_cast<double>(diff_count);
      for (std::size_t i = 0; i < diff_count;) {
        std::size_t j = i;
        while (j < diff_count && diffs[j] == diffs[i]) ++j;
        const double p = static_cast<double>(j - i) / n;
        h -= p * std::log2(p);
        i = j;
      }
      h += 0.0;  // normalize -0
      map.entropy_bits[static_cast<std::size_t>(y) * r.width + x] = h;
      ++map.valid_count;
      sum += h;
      sq += h * h;
      map.max_bits = std::max(map.max_bits, h);
    }
  }
  if (map.valid_count > 0) {
    const double n = static_cast<double>(map.valid_count);
    map.mean_bits = sum / n;
    map.stddev_bits = std::sqrt(std::max(0.0, sq / n - map.mean_bits * map.mean_bits));
  }
  return map;
}

namespace {

// Widths of maximal zero runs along one scan line. A run is measurable when
// a nonzero pixel delimits at least one end; a run filling the whole line
// has no width witness and contributes nothing.
template <typename At>
void scan_line_runs(int length, const At& at, EdgeNoiseStats& stats) {
  int i = 0;
  while (i < length) {
    if (at(i) != 0) {
      ++i;
      continue;
    }
    int j = i;
    while (j < length && at(j) == 0) ++j;
    const bool left = i > 0;
    const bool right = j < length;
    if (left || right) {
      const int width = j - i;
      stats.max_width_px = std::max(stats.max_width_px, width);
      ++stats.width_histogram[width];
    }
    i = j;
  }
}

}  // namespace

EdgeNoiseStats edge_noise(const DepthFrame& frame) {
  const int w = frame.width();
  const int h = frame.height();

  bool any_nonzero = false;
  EdgeNoiseStats stats;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (frame.at(x, y) != 0) {
        any_nonzero = true;
        continue;
      }
      const bool contour = (x > 0 && frame.at(x - 1, y) != 0) ||
                           (x + 1 < w && frame.at(x + 1, y) != 0) ||
                           (y > 0 && frame.at(x, y - 1) != 0) ||
                           (y + 1 < h && frame.at(x, y + 1) != 0);
      if (contour) ++stats.contour_pixel_count;
    }
  }
  if (!any_nonzero) {
    throw AllZeroFrame("frame contains no nonzero pixel");
  }

  for (int y = 0; y < h; ++y) {
    scan_line_runs(w, [&](int x) { return frame.at(x, y); }, stats);
  }
  for (int x = 0; x < w; ++x) {
    scan_line_runs(h, [&](int y) { return frame.at(x, y); }, stats);
  }
  return stats;
}

RadialProfile structural_noise(const DepthFrame& frame, int bin_width_px) {
  if (bin_width_px < 1) {
    throw OutOfBounds("bin width must be >= 1 px");
  }
  double cx = 0.0, cy = 0.0;
  std::size_t valid = 0;
  for (int y = 0; y < frame.height(); ++y) {
    for (int x = 0; x < frame.width(); ++x) {
      if (frame.at(x, y) == 0) continue;
      cx += x;
      cy += y;
      ++valid;
    }
  }
  if (valid == 0) {
    throw EmptyFrame("frame contains no valid pixel");
  }
  cx /= static_cast<double>(valid);
  cy /= static_cast<double>(valid);

  std::vector<double> sums;
  std::vector<std::size_t> counts;
  for (int y = 0; y < frame.height(); ++y) {
    for (int x = 0; x < frame.width(); ++x) {
      const std::uint16_t v = frame.at(x, y);
      if (v == 0) continue;
      const double radius = std::hypot(x - cx, y - cy);
      const std::size_t bin = static_cast<std::size_t>(radius / bin_width_px);
      if (bin >= sums.size()) {
        sums.resize(bin + 1, 0.0);
        counts.resize(bin + 1, 0);
      }
      sums[bin] += v;
      counts[bin] += 1;
    }
  }

  RadialProfile profile;
  profile.center_x_px = cx;
  profile.center_y_px = cy;
  for (std::size_t bin = 0; bin < sums.size(); ++bin) {
    if (counts[bin] == 0) continue;  // absent bin
    profile.bin_radius_px.push_back((static_cast<double>(bin) + 0.5) * bin_width_px);
    profile.mean_depth_mm.push_back(sums[bin] / static_cast<double>(counts[bin]));
    profile.bin_count.push_back(counts[bin]);
  }
  return profile;
}

const char* to_string(AccuracyRegion region) {
  switch (region) {
    case AccuracyRegion::Green: return "green";
    case AccuracyRegion::Yellow: return "yellow";
    case AccuracyRegion::Red: return "red";
    case AccuracyRegion::OutOfView: return "out_of_view";
  }
  return "?";
}

void AccuracyCone::validate() const {
  if (!(horizontal_half_angle_deg > 0.0 && horizontal_half_angle_deg < 90.0) ||
      !(vertical_half_angle_deg > 0.0 && vertical_half_angle_deg < 90.0)) {
    throw InvalidModel("cone half-angles must lie in (0, 90) degrees");
  }
  if (!(min_range_mm > 0.0 && min_range_mm < max_range_mm)) {
    throw InvalidModel("cone requires 0 < min_range < max_range");
  }
  if (!(green_max_mm < yellow_max_mm && yellow_max_mm <= max_range_mm)) {
    throw InvalidModel("cone requires green_max < yellow_max <= max_range");
  }
}

AccuracyRegion classify_region(double x_mm, double y_mm, double z_mm, const AccuracyCone& cone) {
  constexpr double kRadToDeg = 180.0 / M_PI;
  if (z_mm < cone.min_range_mm || z_mm > cone.max_range_mm) {
    return AccuracyRegion::OutOfView;
  }
  if (std::abs(std::atan2(x_mm, z_mm)) * kRadToDeg > cone.horizontal_half_angle_deg ||
      std::abs(std::atan2(y_mm, z_mm)) * kRadToDeg > cone.vertical_half_angle_deg) {
    return AccuracyRegion::OutOfView;
  }
  if (z_mm <= cone.green_max_mm) return AccuracyRegion::Green;
  if (z_mm <= cone.yellow_max_mm) return AccuracyRegion::Yellow;
  return AccuracyRegion::Red;
}

}  // namespace depthqa
