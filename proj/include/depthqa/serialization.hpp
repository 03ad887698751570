// License: Apache 2.0. See LICENSE file in root directory.
// Copyright(c) 2026 depthqa contributors.

#pragma once

#include <string>

#include <json.hpp>

#include "depthqa/frame.hpp"
#include "depthqa/metrics.hpp"
#include "depthqa/simulator.hpp"
#include "depthqa/survey.hpp"
#include "depthqa/trilateration.hpp"

// JSON wire formats. Lengths are always millimeters, angles radians.
// Malformed documents raise FormatError.

namespace depthqa {

using json = nlohmann::json;

// {"sensors":[{"id":"k1","pos":[x,y,z]},...],"radii":[...]}
TrilaterationProblem problem_from_json(const json& j);
json to_json(const TrilaterationProblem& problem);

// {"baselines":{"l12":..,"l13":..,"l23":..},
//  "obs":[{"role":"k1","theta_rad":..,"depth_mm":..},...],
//  "ground_truth":[x,y]}           (ground_truth optional)
CaseStudyInput case_study_from_json(const json& j);
json to_json(const CaseStudyInput& input);

MonteCarloConfig monte_carlo_from_json(const json& j);

NoiseModel noise_model_from_json(const json& j);
json to_json(const NoiseModel& model);

PlanarTarget planar_target_from_json(const json& j);
json to_json(const PlanarTarget& target);

SurveyPlan survey_plan_from_json(const json& j);

json to_json(const FrameStats& stats);
json to_json(const ResolutionStats& stats);
json to_json(const EntropyMap& map);  // summary only, not the per-pixel grid
json to_json(const EdgeNoiseStats& stats);
json to_json(const RadialProfile& profile);
json to_json(const Solution& solution);
json to_json(const CaseStudyReport& report);
json to_json(const MonteCarloResult& result);
json to_json(const SurveyRow& row);

// "radius_px,mean_depth_mm" lines.
std::string radial_profile_csv(const RadialProfile& profile);

json parse_json_file(const std::string& path);  // FormatError on bad JSON

}  // namespace depthqa
