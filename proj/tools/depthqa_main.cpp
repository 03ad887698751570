// License: Apache 2.0. See LICENSE file in root directory.
// Copyright(c) 2026 depthqa contributors.
//
// depthqa - depth-sensor quality assessment and multilateration toolkit.
//
// Subcommands:
//   assess       metric report over recorded depth frames
//   survey       simulated sweep over the key-position grid
//   trilaterate  n-sensor least-squares localization
//   casestudy    three-sensor pipeline with error comparison
//   montecarlo   fused-vs-single-sensor noise study
//
// Exit codes: 0 ok, 2 format error, 3 empty region, 4 invalid plan,
// 5 degenerate geometry, 6 degenerate triangle, 1 anything else.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "depthqa/frame_io.hpp"
#include "depthqa/metrics.hpp"
#include "depthqa/serialization.hpp"
#include "depthqa/survey.hpp"
#include "depthqa/trilateration.hpp"

namespace fs = std::filesystem;
using depthqa::json;

namespace {

constexpr const char* kVersion = "0.1.0";

json report_envelope(const std::string& command, std::uint64_t seed) {
  return {{"tool", {{"name", "depthqa"}, {"version", kVersion}}},
          {"command", command},
          {"seed", seed}};
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text << '\n';
    return;
  }
  std::ofstream out(out_path);
  if (!out) {
    throw depthqa::FormatError("cannot open " + out_path + " for writing");
  }
  out << text << '\n';
}

std::optional<depthqa::Region> parse_region(const std::string& spec) {
  if (spec.empty()) return std::nullopt;
  depthqa::Region r;
  if (std::sscanf(spec.c_str(), "%d,%d,%d,%d", &r.x, &r.y, &r.width, &r.height) != 4) {
    throw depthqa::FormatError("--region expects x,y,w,h");
  }
  return r;
}

std::vector<fs::path> collect_frame_files(const std::vector<std::string>& inputs) {
  std::vector<fs::path> files;
  for (const std::string& input : inputs) {
    const fs::path p(input);
    if (fs::is_directory(p)) {
      for (const auto& entry : fs::directory_iterator(p)) {
        const auto ext = entry.path().extension();
        if (entry.is_regular_file() && (ext == ".dtf" || ext == ".csv")) {
          files.push_back(entry.path());
        }
      }
    } else {
      files.push_back(p);
    }
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) {
    throw depthqa::FormatError("no frame files found");
  }
  return files;
}

int run_assess(const std::vector<std::string>& inputs, const std::string& region_spec,
               double true_distance, int bin_width, std::uint64_t seed,
               const std::string& out_path, const std::string& ring_csv_path) {
  const auto region = parse_region(region_spec);
  const auto files = collect_frame_files(inputs);

  std::vector<depthqa::DepthFrame> frames;
  frames.reserve(files.size());
  for (const fs::path& f : files) {
    frames.push_back(depthqa::read_frame(f));
  }

  json report = report_envelope("assess", seed);
  json config = {{"frames", json::array()}, {"bin_width_px", bin_width}};
  for (const fs::path& f : files) config["frames"].push_back(f.string());
  if (region) {
    config["region"] = {{"x", region->x},
                        {"y", region->y},
                        {"w", region->width},
                        {"h", region->height}};
  }
  if (true_distance > 0.0) config["true_distance_mm"] = true_distance;
  report["config"] = config;

  const depthqa::DepthFrame& first = frames.front();
  json payload;
  payload["frame_count"] = frames.size();
  payload["width"] = first.width();
  payload["height"] = first.height();
  payload["stats"] = depthqa::to_json(depthqa::frame_stats(first, region));
  if (true_distance > 0.0) {
    payload["accuracy_mm"] = depthqa::depth_accuracy(first, region, true_distance);
  }
  payload["resolution"] = depthqa::to_json(depthqa::depth_resolution(first, region));
  if (frames.size() >= 2) {
    payload["entropy"] = depthqa::to_json(depthqa::depth_entropy(frames, region));
  }
  payload["edge"] = depthqa::to_json(depthqa::edge_noise(first));
  const depthqa::RadialProfile profile = depthqa::structural_noise(first, bin_width);
  payload["ring"] = depthqa::to_json(profile);
  report["assess"] = payload;

  if (!ring_csv_path.empty()) {
    std::ofstream csv(ring_csv_path);
    if (!csv) {
      throw depthqa::FormatError("cannot open " + ring_csv_path + " for writing");
    }
    csv << depthqa::radial_profile_csv(profile);
  }
  emit(report.dump(2), out_path);
  return 0;
}

int run_survey(const std::string& config_path, std::uint64_t seed, const std::string& format,
               const std::string& out_path) {
  depthqa::SurveyPlan plan = config_path.empty()
                                 ? depthqa::default_survey_plan()
                                 : depthqa::survey_plan_from_json(
                                       depthqa::parse_json_file(config_path));
  const std::vector<depthqa::SurveyRow> rows = depthqa::run_survey(plan, seed);

  if (format == "csv") {
    emit(depthqa::survey_csv(rows), out_path);
    return 0;
  }
  json report = report_envelope("survey", seed);
  json positions = json::array();
  for (const depthqa::SurveyPosition& p : plan.positions) {
    json entry = {{"pos", p.position_mm}};
    if (p.normal) entry["normal"] = *p.normal;
    positions.push_back(entry);
  }
  report["config"] = {{"positions", positions},
                      {"repeat_count", plan.repeat_count},
                      {"target_extent_mm", plan.target_extent_mm},
                      {"noise", depthqa::to_json(plan.noise)}};
  json out_rows = json::array();
  for (const depthqa::SurveyRow& r : rows) out_rows.push_back(depthqa::to_json(r));
  report["survey"] = out_rows;
  emit(report.dump(2), out_path);
  return 0;
}

int run_trilaterate(const std::string& problem_path, bool planar, std::uint64_t seed,
                    const std::string& out_path) {
  const depthqa::TrilaterationProblem problem =
      depthqa::problem_from_json(depthqa::parse_json_file(problem_path));
  const depthqa::Solution solution = depthqa::solve(problem, planar);

  json report = report_envelope("trilaterate", seed);
  report["config"] = {{"problem", problem_path}, {"planar", planar}};
  report["trilaterate"] = depthqa::to_json(solution);
  emit(report.dump(2), out_path);
  return 0;
}

int run_casestudy(const std::string& input_path, std::uint64_t seed,
                  const std::string& out_path) {
  const depthqa::CaseStudyInput input =
      depthqa::case_study_from_json(depthqa::parse_json_file(input_path));
  const depthqa::CaseStudyReport result = depthqa::run_case_study(input);

  json report = report_envelope("casestudy", seed);
  report["config"] = depthqa::to_json(input);
  report["casestudy"] = depthqa::to_json(result);
  emit(report.dump(2), out_path);
  return 0;
}

int run_montecarlo(const std::string& config_path, int trials, double sigma, std::uint64_t seed,
                   bool seed_given, const std::string& out_path) {
  depthqa::MonteCarloConfig config =
      config_path.empty() ? depthqa::reference_monte_carlo_config()
                          : depthqa::monte_carlo_from_json(depthqa::parse_json_file(config_path));
  if (trials > 0) config.trials = trials;
  if (sigma >= 0.0) config.sigma_mm = sigma;
  if (seed_given || config_path.empty()) config.seed = seed;
  const depthqa::MonteCarloResult result = depthqa::run_monte_carlo(config);

  json report = report_envelope("montecarlo", config.seed);
  report["config"] = {{"baselines",
                       {{"l12", config.l12_mm}, {"l13", config.l13_mm}, {"l23", config.l23_mm}}},
                      {"ground_truth", {config.ground_truth.x, config.ground_truth.y}},
                      {"sigma_mm", config.sigma_mm},
                      {"trials", config.trials}};
  report["montecarlo"] = depthqa::to_json(result);
  emit(report.dump(2), out_path);
  return 0;
}

int dispatch(int argc, char** argv) {
  CLI::App app{"depth-sensor quality assessment and multilateration toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  std::vector<std::string> assess_inputs;
  std::string region_spec;
  double true_distance = 0.0;
  int bin_width = 5;
  std::uint64_t seed = 1;
  std::string out_path;
  std::string config_path;
  std::string format = "json";
  bool planar = false;
  int mc_trials = 0;
  double mc_sigma = -1.0;

  std::string ring_csv_path;

  CLI::App* assess = app.add_subcommand("assess", "metric report over depth frames");
  assess->add_option("inputs", assess_inputs, "frame files or directories")->required();
  assess->add_option("--region", region_spec, "pixel rectangle x,y,w,h");
  assess->add_option("--true-distance", true_distance, "ground-truth distance in mm");
  assess->add_option("--bin-width", bin_width, "radial profile bin width in px");
  assess->add_option("--ring-csv", ring_csv_path, "also write the radial profile as csv");
  assess->add_option("--seed", seed, "report seed echo");
  assess->add_option("--out", out_path, "write the report here instead of stdout");

  CLI::App* survey = app.add_subcommand("survey", "simulated key-position sweep");
  survey->add_option("--config", config_path, "survey plan json");
  survey->add_option("--seed", seed, "master seed");
  survey->add_option("--format", format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  survey->add_option("--out", out_path, "output path");

  CLI::App* tri = app.add_subcommand("trilaterate", "n-sensor least-squares localization");
  tri->add_option("problem", config_path, "problem json")->required();
  tri->add_flag("--planar", planar, "fix z to the anchor sensor's z");
  tri->add_option("--seed", seed, "report seed echo");
  tri->add_option("--out", out_path, "output path");

  CLI::App* cs = app.add_subcommand("casestudy", "three-sensor case-study pipeline");
  cs->add_option("input", config_path, "case-study json")->required();
  cs->add_option("--seed", seed, "report seed echo");
  cs->add_option("--out", out_path, "output path");

  CLI::App* mc = app.add_subcommand("montecarlo", "fused vs single-sensor noise study");
  mc->add_option("--config", config_path, "harness json");
  mc->add_option("--trials", mc_trials, "number of trials");
  mc->add_option("--sigma", mc_sigma, "radius noise sigma in mm");
  CLI::Option* mc_seed = mc->add_option("--seed", seed, "master seed");
  mc->add_option("--out", out_path, "output path");

  CLI11_PARSE(app, argc, argv);

  if (assess->parsed()) {
    return run_assess(assess_inputs, region_spec, true_distance, bin_width, seed, out_path,
                      ring_csv_path);
  }
  if (survey->parsed()) {
    return run_survey(config_path, seed, format, out_path);
  }
  if (tri->parsed()) {
    return run_trilaterate(config_path, planar, seed, out_path);
  }
  if (cs->parsed()) {
    return run_casestudy(config_path, seed, out_path);
  }
  if (mc->parsed()) {
    const bool seed_given = mc_seed->count() > 0;
    const std::uint64_t mc_seed_value = seed_given ? seed : 7;
    return run_montecarlo(config_path, mc_trials, mc_sigma, mc_seed_value, seed_given, out_path);
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const depthqa::FormatError& e) {
    std::cerr << "format error: " << e.what() << '\n';
    return 2;
  } catch (const depthqa::TruncatedFile& e) {
    std::cerr << "format error: " << e.what() << '\n';
    return 2;
  } catch (const depthqa::DimensionMismatch& e) {
    std::cerr << "format error: " << e.what() << '\n';
    return 2;
  } catch (const depthqa::OutOfBounds& e) {
    std::cerr << "format error: " << e.what() << '\n';
    return 2;
  } catch (const depthqa::EmptyRegion& e) {
    std::cerr << "empty region: " << e.what() << '\n';
    return 3;
  } catch (const depthqa::InvalidPlan& e) {
    std::cerr << "invalid plan: " << e.what() << '\n';
    return 4;
  } catch (const depthqa::DegenerateGeometry& e) {
    std::cerr << "degenerate geometry: " << e.what() << '\n';
    return 5;
  } catch (const depthqa::DegenerateTriangle& e) {
    std::cerr << "degenerate triangle: " << e.what() << '\n';
    return 6;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
