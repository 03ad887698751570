// License: Apache 2.0. See LICENSE file in root directory.
// Copyright(c) 2026 depthqa contributors.

#include "depthqa/serialization.hpp"

#include <fstream>

namespace depthqa {

namespace {

// Wraps nlohmann's exceptions into the library's FormatError so CLI exit
// codes stay uniform.
template <typename F>
auto wire(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw FormatError(std::string("bad json document: ") + e.what());
  }
}

SensorRole role_from_string(const std::string& s) {
  if (s == "k1") return SensorRole::K1;
  if (s == "k2") return SensorRole::K2;
  if (s == "k3") return SensorRole::K3;
  throw FormatError("unknown sensor role '" + s + "'");
}

std::array<double, 3> vec3(const json& j) {
  if (!j.is_array() || j.size() != 3) {
    throw FormatError("expected a 3-element array");
  }
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

std::array<double, 2> vec2(const json& j) {
  if (!j.is_array() || j.size() != 2) {
    throw FormatError("expected a 2-element array");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

TrilaterationProblem problem_from_json(const json& j) {
  return wire([&] {
    TrilaterationProblem problem;
    for (const json& s : j.at("sensors")) {
      problem.sensors.push_back(SensorPose{s.at("id").get<std::string>(), vec3(s.at("pos"))});
    }
    problem.radii_mm = j.at("radii").get<std::vector<double>>();
    return problem;
  });
}

json to_json(const TrilaterationProblem& problem) {
  json sensors = json::array();
  for (const SensorPose& s : problem.sensors) {
    sensors.push_back({{"id", s.id}, {"pos", s.position}});
  }
  return {{"sensors", sensors}, {"radii", problem.radii_mm}};
}

CaseStudyInput case_study_from_json(const json& j) {
  return wire([&] {
    CaseStudyInput input;
    const json& baselines = j.at("baselines");
    input.l12_mm = baselines.at("l12").get<double>();
    input.l13_mm = baselines.at("l13").get<double>();
    input.l23_mm = baselines.at("l23").get<double>();
    const json& obs = j.at("obs");
    if (!obs.is_array() || obs.size() != 3) {
      throw FormatError("'obs' must list exactly 3 observations");
    }
    for (std::size_t i = 0; i < 3; ++i) {
      input.observations[i] = Observation{role_from_string(obs[i].at("role").get<std::string>()),
                                          obs[i].at("theta_rad").get<double>(),
                                          obs[i].at("depth_mm").get<double>()};
    }
    if (j.contains("ground_truth") && !j["ground_truth"].is_null()) {
      const auto gt = vec2(j["ground_truth"]);
      input.ground_truth = PlanarPoint{gt[0], gt[1]};
    }
    return input;
  });
}

json to_json(const CaseStudyInput& input) {
  json obs = json::array();
  for (const Observation& o : input.observations) {
    obs.push_back(
        {{"role", to_string(o.role)}, {"theta_rad", o.theta_rad}, {"depth_mm", o.depth_mm}});
  }
  json out = {{"baselines",
               {{"l12", input.l12_mm}, {"l13", input.l13_mm}, {"l23", input.l23_mm}}},
              {"obs", obs}};
  if (input.ground_truth) {
    out["ground_truth"] = {input.ground_truth->x, input.ground_truth->y};
  }
  return out;
}

MonteCarloConfig monte_carlo_from_json(const json& j) {
  return wire([&] {
    MonteCarloConfig config = reference_monte_carlo_config();
    if (j.contains("baselines")) {
      const json& b = j["baselines"];
      config.l12_mm = b.at("l12").get<double>();
      config.l13_mm = b.at("l13").get<double>();
      config.l23_mm = b.at("l23").get<double>();
    }
    if (j.contains("ground_truth")) {
      const auto gt = vec2(j["ground_truth"]);
      config.ground_truth = PlanarPoint{gt[0], gt[1]};
    }
    config.sigma_mm = j.value("sigma_mm", config.sigma_mm);
    config.trials = j.value("trials", config.trials);
    config.seed = j.value("seed", config.seed);
    return config;
  });
}

NoiseModel noise_model_from_json(const json& j) {
  return wire([&] {
    NoiseModel m;
    m.accuracy_offset_green_mm = j.value("accuracy_offset_green_mm", m.accuracy_offset_green_mm);
    m.accuracy_offset_yellow_mm =
        j.value("accuracy_offset_yellow_mm", m.accuracy_offset_yellow_mm);
    m.accuracy_offset_red_mm = j.value("accuracy_offset_red_mm", m.accuracy_offset_red_mm);
    m.pixel_sigma_mm = j.value("pixel_sigma_mm", m.pixel_sigma_mm);
    m.sigma_reference_mm = j.value("sigma_reference_mm", m.sigma_reference_mm);
    m.jitter_span_mm = j.value("jitter_span_mm", m.jitter_span_mm);
    m.edge_width_px = j.value("edge_width_px", m.edge_width_px);
    m.ring_amplitude_mm = j.value("ring_amplitude_mm", m.ring_amplitude_mm);
    m.cone.min_range_mm = j.value("min_range_mm", m.cone.min_range_mm);
    m.cone.max_range_mm = j.value("max_range_mm", m.cone.max_range_mm);
    m.cone.green_max_mm = j.value("green_max_mm", m.cone.green_max_mm);
    m.cone.yellow_max_mm = j.value("yellow_max_mm", m.cone.yellow_max_mm);
    m.cone.horizontal_half_angle_deg =
        j.value("horizontal_half_angle_deg", m.cone.horizontal_half_angle_deg);
    m.cone.vertical_half_angle_deg =
        j.value("vertical_half_angle_deg", m.cone.vertical_half_angle_deg);
    m.width_px = j.value("width_px", m.width_px);
    m.height_px = j.value("height_px", m.height_px);
    m.seed = j.value("seed", m.seed);
    return m;
  });
}

json to_json(const NoiseModel& m) {
  return {{"accuracy_offset_green_mm", m.accuracy_offset_green_mm},
          {"accuracy_offset_yellow_mm", m.accuracy_offset_yellow_mm},
          {"accuracy_offset_red_mm", m.accuracy_offset_red_mm},
          {"pixel_sigma_mm", m.pixel_sigma_mm},
          {"sigma_reference_mm", m.sigma_reference_mm},
          {"jitter_span_mm", m.jitter_span_mm},
          {"edge_width_px", m.edge_width_px},
          {"ring_amplitude_mm", m.ring_amplitude_mm},
          {"min_range_mm", m.cone.min_range_mm},
          {"max_range_mm", m.cone.max_range_mm},
          {"green_max_mm", m.cone.green_max_mm},
          {"yellow_max_mm", m.cone.yellow_max_mm},
          {"horizontal_half_angle_deg", m.cone.horizontal_half_angle_deg},
          {"vertical_half_angle_deg", m.cone.vertical_half_angle_deg},
          {"width_px", m.width_px},
          {"height_px", m.height_px},
          {"seed", m.seed}};
}

PlanarTarget planar_target_from_json(const json& j) {
  return wire([&] {
    PlanarTarget t;
    t.center_mm = vec3(j.at("center_mm"));
    if (j.contains("normal")) t.normal = vec3(j["normal"]);
    if (j.contains("extent_mm") && !j["extent_mm"].is_null()) {
      t.extent_mm = vec2(j["extent_mm"]);
    }
    if (j.contains("backdrop_mm") && !j["backdrop_mm"].is_null()) {
      t.backdrop_mm = j["backdrop_mm"].get<double>();
    }
    return t;
  });
}

json to_json(const PlanarTarget& t) {
  json out = {{"center_mm", t.center_mm}, {"normal", t.normal}};
  if (t.extent_mm) out["extent_mm"] = *t.extent_mm;
  if (t.backdrop_mm) out["backdrop_mm"] = *t.backdrop_mm;
  return out;
}

SurveyPlan survey_plan_from_json(const json& j) {
  return wire([&] {
    SurveyPlan plan = default_survey_plan();
    if (j.contains("positions")) {
      plan.positions.clear();
      for (const json& p : j["positions"]) {
        SurveyPosition pos;
        if (p.is_array()) {
          pos.position_mm = vec3(p);
        } else {
          pos.position_mm = vec3(p.at("pos"));
          if (p.contains("normal")) pos.normal = vec3(p["normal"]);
        }
        plan.positions.push_back(pos);
      }
    }
    plan.repeat_count = j.value("repeat_count", plan.repeat_count);
    if (j.contains("target_extent_mm")) {
      plan.target_extent_mm = vec2(j["target_extent_mm"]);
    }
    if (j.contains("noise")) {
      plan.noise = noise_model_from_json(j["noise"]);
    }
    return plan;
  });
}

json to_json(const FrameStats& s) {
  return {{"mean_mm", s.mean_mm},
          {"stddev_mm", s.stddev_mm},
          {"min_mm", s.min_mm},
          {"max_mm", s.max_mm},
          {"valid_count", s.valid_count}};
}

json to_json(const ResolutionStats& s) {
  return {{"min_mm", s.min_mm},
          {"mean_mm", s.mean_mm},
          {"max_mm", s.max_mm},
          {"stddev_mm", s.stddev_mm},
          {"pair_count", s.pair_count}};
}

json to_json(const EntropyMap& m) {
  return {{"mean_bits", m.mean_bits},
          {"stddev_bits", m.stddev_bits},
          {"max_bits", m.max_bits},
          {"valid_count", m.valid_count}};
}

json to_json(const EdgeNoiseStats& s) {
  json histogram = json::object();
  for (const auto& [width, count] : s.width_histogram) {
    histogram[std::to_string(width)] = count;
  }
  return {{"contour_pixel_count", s.contour_pixel_count},
          {"max_width_px", s.max_width_px},
          {"width_histogram", histogram}};
}

json to_json(const RadialProfile& p) {
  json profile = json::array();
  for (std::size_t i = 0; i < p.bin_radius_px.size(); ++i) {
    profile.push_back({{"radius_px", p.bin_radius_px[i]},
                       {"mean_depth_mm", p.mean_depth_mm[i]},
                       {"count", p.bin_count[i]}});
  }
  return {{"center_px", {p.center_x_px, p.center_y_px}}, {"bins", profile}};
}

json to_json(const Solution& s) {
  return {{"position", s.position},
          {"residuals_mm2", s.residuals_mm2},
          {"condition_estimate", s.condition_estimate},
          {"method", to_string(s.method)}};
}

json to_json(const CaseStudyReport& r) {
  json sensors = json::array();
  for (const SensorPose& s : r.sensors) {
    sensors.push_back({{"id", s.id}, {"pos", s.position}});
  }
  json singles = json::object();
  const std::array<const char*, 3> names{"k1", "k2", "k3"};
  for (std::size_t i = 0; i < 3; ++i) {
    singles[names[i]] = {r.single_positions[i].x, r.single_positions[i].y};
  }
  json out = {{"sensors", sensors},
              {"radii_mm", r.radii_mm},
              {"fused", {r.fused.x, r.fused.y}},
              {"single_positions", singles},
              {"solution", to_json(r.solution)}};
  if (r.errors) {
    out["errors"] = {{"k1_mm", r.errors->single_mm[0]},
                     {"k2_mm", r.errors->single_mm[1]},
                     {"k3_mm", r.errors->single_mm[2]},
                     {"fused_mm", r.errors->fused_mm},
                     {"mean_single_mm", r.errors->mean_single_mm}};
  }
  return out;
}

json to_json(const MonteCarloResult& r) {
  return {{"trials", r.trials},
          {"sigma_mm", r.sigma_mm},
          {"seed", r.seed},
          {"median_fused_error_mm", r.median_fused_error_mm},
          {"median_mean_single_error_mm", r.median_mean_single_error_mm},
          {"median_single_error_mm", r.median_single_error_mm},
          {"fusion_beats_mean", r.fusion_beats_mean}};
}

json to_json(const SurveyRow& r) {
  json out = {{"index", r.index},
              {"position_mm", r.position_mm},
              {"region", to_string(r.region)},
              {"out_of_range", r.out_of_range}};
  if (!r.out_of_range) {
    out["stats"] = to_json(r.stats);
    out["accuracy_mm"] = r.accuracy_mm;
    out["resolution"] = to_json(r.resolution);
    if (r.has_entropy) {
      out["entropy_mean_bits"] = r.entropy_mean_bits;
      out["entropy_stddev_bits"] = r.entropy_stddev_bits;
    }
    out["edge_max_width_px"] = r.edge_max_width_px;
    out["ring_drop_mm"] = r.ring_drop_mm;
  }
  return out;
}

std::string radial_profile_csv(const RadialProfile& p) {
  std::string out = "radius_px,mean_depth_mm\n";
  char buf[64];
  for (std::size_t i = 0; i < p.bin_radius_px.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.1f,%.6f\n", p.bin_radius_px[i], p.mean_depth_mm[i]);
    out += buf;
  }
  return out;
}

json parse_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw FormatError("cannot open " + path);
  }
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw FormatError(path + ": " + e.what());
  }
}

}  // namespace depthqa
