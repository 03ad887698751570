// License: Apache 2.0. See LICENSE file in root directory.
// Copyright(c) 2026 depthqa contributors.

#include "depthqa/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "depthqa/detrand.hpp"

namespace depthqa {

namespace {

constexpr std::uint64_t kGaussStream = 0x6761757373303144ull;
constexpr std::uint64_t kJitterStream = 0x6a69747465723031ull;

std::array<double, 3> normalized(const std::array<double, 3>& v) {
  const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  return {v[0] / n, v[1] / n, v[2] / n};
}

std::array<double, 3> cross(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double dot(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

// Integer jitter draw over {-span/2, ..., +span/2}, weighted toward zero so
// the spatial spread stays inside the observed per-frame deviation while the
// temporal envelope can reach the full span.
class JitterTable {
 public:
  explicit JitterTable(int span) : span_(span) {
    for (int k = -span / 2; k <= span / 2; ++k) {
      const int shift = 3 * std::abs(k);
      weights_.push_back(shift < 10 ? std::max(1024u >> shift, 1u) : 1u);
    }
    for (const unsigned w : weights_) total_ += w;
  }

  int draw(std::uint64_t h) const {
    std::uint64_t ticket = h % total_;
    for (std::size_t i = 0; i < weights_.size(); ++i) {
      if (ticket < weights_[i]) return static_cast<int>(i) - span_ / 2;
      ticket -= weights_[i];
    }
    return span_ / 2;
  }

 private:
  int span_;
  std::vector<unsigned> weights_;
  std::uint64_t total_ = 0;
};

struct PlaneBasis {
  std::array<double, 3> e1;
  std::array<double, 3> e2;
};

PlaneBasis in_plane_basis(const std::array<double, 3>& normal) {
  const std::array<double, 3> ref =
      std::abs(normal[1]) < 0.9 ? std::array<double, 3>{0.0, 1.0, 0.0}
                                : std::array<double, 3>{1.0, 0.0, 0.0};
  const auto e1 = normalized(cross(normal, ref));
  const auto e2 = normalized(cross(normal, e1));
  return {e1, e2};
}

}  // namespace

void NoiseModel::validate() const {
  cone.validate();
  if (jitter_span_mm < 0 || jitter_span_mm % 2 != 0) {
    throw InvalidModel("jitter span must be even and non-negative");
  }
  if (edge_width_px < 0 || edge_width_px > 3) {
    throw InvalidModel("edge width must lie in [0, 3] px");
  }
  if (!(pixel_sigma_mm >= 0.0) || !(sigma_reference_mm > 0.0)) {
    throw InvalidModel("pixel sigma must be >= 0 at a positive reference distance");
  }
  if (width_px < 2 || height_px < 2) {
    throw InvalidModel("sensor resolution must be at least 2x2");
  }
  if (cone.max_range_mm > 65535.0) {
    throw InvalidModel("max range exceeds the 16-bit sample format");
  }
}

void PlanarTarget::validate() const {
  const double n = std::sqrt(dot(normal, normal));
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw InvalidModel("target normal must be nonzero");
  }
  if (extent_mm && !((*extent_mm)[0] > 0.0 && (*extent_mm)[1] > 0.0)) {
    throw InvalidModel("target extent must be positive");
  }
  if (backdrop_mm && !(*backdrop_mm > 0.0)) {
    throw InvalidModel("backdrop distance must be positive");
  }
}

DepthFrame render_frame(const PlanarTarget& target, const NoiseModel& model, int frame_index) {
  model.validate();
  target.validate();

  const int w = model.width_px;
  const int h = model.height_px;
  const auto normal = normalized(target.normal);
  const double plane_offset = dot(normal, target.center_mm);
  const PlaneBasis basis = in_plane_basis(normal);

  const double tan_half_h = std::tan(model.cone.horizontal_half_angle_deg * M_PI / 180.0);
  const double tan_half_v = std::tan(model.cone.vertical_half_angle_deg * M_PI / 180.0);
  std::vector<double> tan_x(static_cast<std::size_t>(w));
  std::vector<double> tan_y(static_cast<std::size_t>(h));
  for (int x = 0; x < w; ++x) {
    tan_x[static_cast<std::size_t>(x)] = (2.0 * (x + 0.5) / w - 1.0) * tan_half_h;
  }
  for (int y = 0; y < h; ++y) {
    tan_y[static_cast<std::size_t>(y)] = (2.0 * (y + 0.5) / h - 1.0) * tan_half_v;
  }

  const double ring_r_max = std::hypot(w / 2.0, h / 2.0);
  const JitterTable jitter(model.jitter_span_mm);
  const std::uint64_t gauss_seed = detrand::mix(model.seed, kGaussStream);
  const std::uint64_t jitter_seed = detrand::mix(model.seed, kJitterStream);

  std::vector<std::uint16_t> samples(static_cast<std::size_t>(w) * h, 0);
  std::vector<std::uint8_t> on_target(samples.size(), 0);
  bool target_hit = false;

  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t idx = static_cast<std::size_t>(y) * w + x;
      const std::array<double, 3> dir{tan_x[static_cast<std::size_t>(x)],
                                      tan_y[static_cast<std::size_t>(y)], 1.0};

      // Nearest positive hit among the target plane and the backdrop; the
      // ray is parameterized by z so t is the z-depth directly.
      double z_hit = 0.0;
      bool hit = false;
      bool hit_target = false;
      const double denom = dot(normal, dir);
      if (std::abs(denom) > 1e-12) {
        const double t = plane_offset / denom;
        if (t > 0.0) {
          bool inside = true;
          if (target.extent_mm) {
            const std::array<double, 3> rel{t * dir[0] - target.center_mm[0],
                                            t * dir[1] - target.center_mm[1],
                                            t * dir[2] - target.center_mm[2]};
            inside = std::abs(dot(rel, basis.e1)) <= (*target.extent_mm)[0] / 2.0 &&
                     std::abs(dot(rel, basis.e2)) <= (*target.extent_mm)[1] / 2.0;
          }
          if (inside) {
            target_hit = true;
            z_hit = t;
            hit = true;
            hit_target = true;
          }
        }
      }
      if (target.backdrop_mm && (!hit || *target.backdrop_mm < z_hit)) {
        z_hit = *target.backdrop_mm;
        hit = true;
        hit_target = false;
      }
      if (!hit || z_hit < model.min_range_mm() || z_hit > model.max_range_mm()) {
        continue;
      }

      const std::array<double, 3> p{z_hit * dir[0], z_hit * dir[1], z_hit};
      double bias = 0.0;
      switch (classify_region(p[0], p[1], p[2], model.cone)) {
        case AccuracyRegion::Green: bias = model.accuracy_offset_green_mm; break;
        case AccuracyRegion::Yellow: bias = model.accuracy_offset_yellow_mm; break;
        case AccuracyRegion::Red: bias = model.accuracy_offset_red_mm; break;
        case AccuracyRegion::OutOfView: continue;
      }

      const double r_px = std::hypot(x + 0.5 - w / 2.0, y + 0.5 - h / 2.0);
      const double ring = model.ring_amplitude_mm * (r_px / ring_r_max) * (r_px / ring_r_max);

      double gauss = 0.0;
      if (model.pixel_sigma_mm > 0.0) {
        const std::uint64_t base = detrand::mix(gauss_seed, idx);
        gauss = model.pixel_sigma_mm * (z_hit / model.sigma_reference_mm) *
                detrand::gaussian(detrand::mix(base, 0), detrand::mix(base, 1));
      }

      long long value = std::llround(z_hit - bias - ring + gauss);
      if (model.jitter_span_mm > 0) {
        const std::uint64_t ht = detrand::mix(detrand::mix(jitter_seed, idx),
                                              static_cast<std::uint64_t>(frame_index));
        value += jitter.draw(ht);
      }
      if (value < std::llround(model.min_range_mm()) ||
          value > std::llround(model.max_range_mm())) {
        continue;
      }
      samples[idx] = static_cast<std::uint16_t>(value);
      on_target[idx] = hit_target ? 1 : 0;
    }
  }

  if (!target_hit) {
    throw NoIntersection("target does not intersect the view frustum");
  }

  // Zero contour: carve edge_width_px into the target where it borders
  // anything that is not the target (backdrop, out-of-range, off-target).
  std::vector<std::uint8_t> mask(on_target.size());
  for (std::size_t i = 0; i < mask.size(); ++i) {
    mask[i] = on_target[i] && samples[i] != 0;
  }
  for (int pass = 0; pass < model.edge_width_px; ++pass) {
    std::vector<std::size_t> rim;
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const std::size_t idx = static_cast<std::size_t>(y) * w + x;
        if (!mask[idx]) continue;
        const bool border = (x > 0 && !mask[idx - 1]) || (x + 1 < w && !mask[idx + 1]) ||
                            (y > 0 && !mask[idx - static_cast<std::size_t>(w)]) ||
                            (y + 1 < h && !mask[idx + static_cast<std::size_t>(w)]);
        if (border) rim.push_back(idx);
      }
    }
    for (const std::size_t idx : rim) {
      mask[idx] = 0;
      samples[idx] = 0;
    }
  }

  return DepthFrame(w, h, std::move(samples));
}

std::vector<DepthFrame> render_series(const PlanarTarget& target, const NoiseModel& model,
                                      int frame_count) {
  if (frame_count < 2) {
    throw TooFewFrames("series needs at least 2 frames, got " + std::to_string(frame_count));
  }
  std::vector<DepthFrame> series;
  series.reserve(static_cast<std::size_t>(frame_count));
  for (int t = 0; t < frame_count; ++t) {
    series.push_back(render_frame(target, model, t));
  }
  return series;
}

}  // namespace depthqa
