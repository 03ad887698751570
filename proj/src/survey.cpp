// License: Apache 2.0. See LICENSE file in root directory.
// Copyright(c) 2026 depthqa contributors.

#include "depthqa/survey.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "depthqa/detrand.hpp"

namespace depthqa {

void SurveyPlan::validate() const {
  if (positions.empty()) {
    throw InvalidPlan("survey plan has no positions");
  }
  if (repeat_count < 1) {
    throw InvalidPlan("repeat count must be >= 1");
  }
  if (!(target_extent_mm[0] > 0.0 && target_extent_mm[1] > 0.0)) {
    throw InvalidPlan("target extent must be positive");
  }
  try {
    noise.validate();
  } catch (const InvalidModel& e) {
    throw InvalidPlan(std::string("noise model: ") + e.what());
  }
}

SurveyPlan default_survey_plan() {
  SurveyPlan plan;
  const auto fan = [&plan](double z_mm, std::initializer_list<double> angles_deg,
                           bool horizontal) {
    for (const double a : angles_deg) {
      const double off = z_mm * std::tan(a * M_PI / 180.0);
      SurveyPosition p;
      p.position_mm = horizontal ? std::array<double, 3>{off, 0.0, z_mm}
                                 : std::array<double, 3>{0.0, off, z_mm};
      plan.positions.push_back(p);
    }
  };
  // 21 key positions across the horizontal plane,
  fan(1000.0, {-20.0, 0.0, 20.0}, true);
  fan(2000.0, {-28.0, -14.0, 0.0, 14.0, 28.0}, true);
  fan(3000.0, {-30.0, -18.0, -6.0, 6.0, 18.0, 30.0}, true);
  fan(4000.0, {-30.0, -20.0, -10.0, 0.0, 10.0, 20.0, 30.0}, true);
  // and 19 across the vertical plane.
  fan(1000.0, {-15.0, 0.0, 15.0}, false);
  fan(2000.0, {-24.0, -8.0, 8.0, 24.0}, false);
  fan(3000.0, {-25.0, -15.0, -5.0, 5.0, 15.0, 25.0}, false);
  fan(4000.0, {-25.0, -15.0, -5.0, 5.0, 15.0, 25.0}, false);
  return plan;
}

std::vector<SurveyRow> run_survey(const SurveyPlan& plan, std::uint64_t seed) {
  plan.validate();

  std::vector<SurveyRow> rows;
  rows.reserve(plan.positions.size());
  for (std::size_t i = 0; i < plan.positions.size(); ++i) {
    const SurveyPosition& key = plan.positions[i];
    SurveyRow row;
    row.index = static_cast<int>(i);
    row.position_mm = key.position_mm;
    row.region = classify_region(key.position_mm[0], key.position_mm[1], key.position_mm[2],
                                 plan.noise.cone);
    row.out_of_range = row.region == AccuracyRegion::OutOfView;
    if (row.out_of_range) {
      rows.push_back(row);
      continue;
    }

    PlanarTarget target;
    target.center_mm = key.position_mm;
    target.normal = key.normal.value_or(std::array<double, 3>{0.0, 0.0, -1.0});
    target.extent_mm = plan.target_extent_mm;

    NoiseModel noise = plan.noise;
    noise.seed = detrand::mix(seed, static_cast<std::uint64_t>(i));

    const double true_distance = key.position_mm[2];
    if (plan.repeat_count >= 2) {
      const std::vector<DepthFrame> series = render_series(target, noise, plan.repeat_count);
      const EntropyMap entropy = depth_entropy(series);
      row.has_entropy = true;
      row.entropy_mean_bits = entropy.mean_bits;
      row.entropy_stddev_bits = entropy.stddev_bits;
      row.stats = frame_stats(series.front());
      row.accuracy_mm = true_distance - row.stats.mean_mm;
      row.resolution = depth_resolution(series.front());
      row.edge_max_width_px = edge_noise(series.front()).max_width_px;
      const RadialProfile profile = structural_noise(series.front());
      row.ring_drop_mm = profile.mean_depth_mm.front() - profile.mean_depth_mm.back();
    } else {
      const DepthFrame frame = render_frame(target, noise, 0);
      row.stats = frame_stats(frame);
      row.accuracy_mm = true_distance - row.stats.mean_mm;
      row.resolution = depth_resolution(frame);
      row.edge_max_width_px = edge_noise(frame).max_width_px;
      const RadialProfile profile = structural_noise(frame);
      row.ring_drop_mm = profile.mean_depth_mm.front() - profile.mean_depth_mm.back();
    }
    rows.push_back(row);
  }
  return rows;
}

std::string survey_csv(const std::vector<SurveyRow>& rows) {
  std::string out =
      "index,x_mm,y_mm,z_mm,region,out_of_range,valid_count,mean_mm,stddev_mm,min_mm,max_mm,"
      "accuracy_mm,res_min_mm,res_mean_mm,res_max_mm,res_stddev_mm,entropy_mean_bits,"
      "entropy_stddev_bits,edge_max_width_px,ring_drop_mm\n";
  char buf[512];
  for (const SurveyRow& r : rows) {
    if (r.out_of_range) {
      std::snprintf(buf, sizeof(buf), "%d,%.1f,%.1f,%.1f,%s,1,,,,,,,,,,,,,,\n", r.index,
                    r.position_mm[0], r.position_mm[1], r.position_mm[2], to_string(r.region));
      out += buf;
      continue;
    }
    char entropy_cells[64] = ",";
    if (r.has_entropy) {
      std::snprintf(entropy_cells, sizeof(entropy_cells), "%.6f,%.6f", r.entropy_mean_bits,
                    r.entropy_stddev_bits);
    }
    std::snprintf(buf, sizeof(buf),
                  "%d,%.1f,%.1f,%.1f,%s,0,%lld,%.6f,%.6f,%d,%d,%.6f,%.6f,%.6f,%.6f,%.6f,%s,"
                  "%d,%.6f\n",
                  r.index, r.position_mm[0], r.position_mm[1], r.position_mm[2],
                  to_string(r.region), static_cast<long long>(r.stats.valid_count),
                  r.stats.mean_mm, r.stats.stddev_mm, r.stats.min_mm, r.stats.max_mm,
                  r.accuracy_mm, r.resolution.min_mm, r.resolution.mean_mm, r.resolution.max_mm,
                  r.resolution.stddev_mm, entropy_cells, r.edge_max_width_px, r.ring_drop_mm);
    out += buf;
  }
  return out;
}

}  // namespace depthqa
