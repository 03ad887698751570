// License: Apache 2.0. See LICENSE file in root directory.
// Copyright(c) 2026 depthqa contributors.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "depthqa/metrics.hpp"
#include "depthqa/simulator.hpp"

namespace depthqa {

struct SurveyPosition {
  std::array<double, 3> position_mm{};
  std::optional<std::array<double, 3>> normal;  // default: facing the sensor
};

struct SurveyPlan {
  std::vector<SurveyPosition> positions;
  int repeat_count = 30;
  std::array<double, 2> target_extent_mm{376.0, 301.0};  // 19-inch 4:3 panel
  NoiseModel noise;

  void validate() const;  // throws InvalidPlan
};

// 21 key positions fanned across the horizontal plane and 19 across the
// vertical plane, on 1/2/3/4 m depth shells.
SurveyPlan default_survey_plan();

struct SurveyRow {
  int index = 0;
  std::array<double, 3> position_mm{};
  AccuracyRegion region = AccuracyRegion::OutOfView;
  bool out_of_range = false;
  // Metrics below are meaningful only when out_of_range is false.
  FrameStats stats;
  double accuracy_mm = 0.0;
  ResolutionStats resolution;
  bool has_entropy = false;  // needs at least 2 repeats
  double entropy_mean_bits = 0.0;
  double entropy_stddev_bits = 0.0;
  int edge_max_width_px = 0;
  double ring_drop_mm = 0.0;  // first bin mean minus last bin mean
};

// Renders repeat_count frames at every key position and evaluates all
// metrics. Deterministic for a given (plan, seed); each position draws from
// an independent stream derived from (seed, position index).
std::vector<SurveyRow> run_survey(const SurveyPlan& plan, std::uint64_t seed);

std::string survey_csv(const std::vector<SurveyRow>& rows);

}  // namespace depthqa
