// License: Apache 2.0. See LICENSE file in root directory.
// Copyright(c) 2026 depthqa contributors.
//
// End-to-end tests against the built binary. The harness passes its path in
// DEPTHQA_BIN and the repo root in DEPTHQA_ROOT.

#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "depthqa/frame_io.hpp"
#include "depthqa/serialization.hpp"
#include "depthqa/simulator.hpp"
#include "helpers.hpp"
#include "schema_check.hpp"

using namespace depthqa;
namespace fs = std::filesystem;

namespace {

std::string binary_path() {
  const char* env = std::getenv("DEPTHQA_BIN");
  REQUIRE_MESSAGE(env != nullptr, "DEPTHQA_BIN not set");
  return env;
}

fs::path repo_root() {
  const char* env = std::getenv("DEPTHQA_ROOT");
  REQUIRE_MESSAGE(env != nullptr, "DEPTHQA_ROOT not set");
  return env;
}

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const fs::path out_file = fs::temp_directory_path() / "depthqa_cli_out.txt";
  const std::string cmd =
      binary_path() + " " + args + " > " + out_file.string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  RunResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out_file);
  std::stringstream buffer;
  buffer << in.rdbuf();
  result.out = buffer.str();
  fs::remove(out_file);
  return result;
}

json schema() {
  return parse_json_file((repo_root() / "docs" / "report.schema.json").string());
}

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / "depthqa_cli_test") {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("assess on a constant frame reports zero accuracy") {
  TempDir dir;
  const fs::path frame_path = dir.path / "flat.dtf";
  write_frame(testing::constant_frame(64, 48, 1000), frame_path);

  const RunResult r =
      run_cli("assess " + frame_path.string() + " --true-distance 1000 --seed 9");
  REQUIRE(r.exit_code == 0);
  const json report = json::parse(r.out);
  CHECK(testing::validate_schema(report, schema()).empty());
  CHECK(report["command"] == "assess");
  CHECK(report["seed"] == 9);
  CHECK(report["assess"]["accuracy_mm"].get<double>() == 0.0);
  CHECK(report["assess"]["stats"]["mean_mm"].get<double>() == 1000.0);
}

TEST_CASE("assess on the reference capture reports the reference stats") {
  TempDir dir;
  const fs::path frame_path = dir.path / "reference.dtf";
  write_frame(testing::reference_capture_2m(), frame_path);

  const RunResult r = run_cli("assess " + frame_path.string() + " --true-distance 2000");
  REQUIRE(r.exit_code == 0);
  const json report = json::parse(r.out);
  CHECK(report["assess"]["stats"]["mean_mm"].get<double>() == doctest::Approx(1999.8));
  CHECK(report["assess"]["stats"]["stddev_mm"].get<double>() == doctest::Approx(1.2));
  CHECK(report["assess"]["stats"]["min_mm"] == 1996);
  CHECK(report["assess"]["stats"]["max_mm"] == 2004);
  CHECK(report["assess"]["accuracy_mm"].get<double>() == doctest::Approx(0.2));
}

TEST_CASE("assess over a rendered series bounds the entropy") {
  TempDir dir;
  NoiseModel model;
  model.seed = 77;
  PlanarTarget wall;
  wall.center_mm = {0, 0, 2000};
  const auto series = render_series(wall, model, 30);
  for (std::size_t i = 0; i < series.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "frame_%02zu.dtf", i);
    write_frame(series[i], dir.path / name);
  }

  const RunResult r = run_cli("assess " + dir.path.string());
  REQUIRE(r.exit_code == 0);
  const json report = json::parse(r.out);
  CHECK(testing::validate_schema(report, schema()).empty());
  CHECK(report["assess"]["frame_count"] == 30);
  const double mean_bits = report["assess"]["entropy"]["mean_bits"].get<double>();
  const double max_bits = report["assess"]["entropy"]["max_bits"].get<double>();
  CHECK(mean_bits > 0.0);
  CHECK(max_bits <= std::log2(29.0) + 1e-12);
}

TEST_CASE("assess --ring-csv writes the radial profile") {
  TempDir dir;
  const fs::path frame_path = dir.path / "flat.dtf";
  const fs::path csv_path = dir.path / "ring.csv";
  write_frame(testing::constant_frame(32, 32, 1500), frame_path);

  const RunResult r = run_cli("assess " + frame_path.string() + " --ring-csv " +
                              csv_path.string() + " --out " + (dir.path / "r.json").string());
  REQUIRE(r.exit_code == 0);
  std::ifstream csv(csv_path);
  std::string header, first;
  std::getline(csv, header);
  std::getline(csv, first);
  CHECK(header == "radius_px,mean_depth_mm");
  CHECK(first.find("1500.000000") != std::string::npos);
}

TEST_CASE("assess failure exit codes") {
  TempDir dir;
  const fs::path bad = dir.path / "bad.dtf";
  std::ofstream(bad) << "DTFX nope\n";
  CHECK(run_cli("assess " + bad.string()).exit_code == 2);

  const fs::path frame_path = dir.path / "holes.dtf";
  std::vector<std::uint16_t> values(64 * 48, 1000);
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 8; ++x) values[static_cast<std::size_t>(y) * 64 + x] = 0;
  }
  write_frame(DepthFrame(64, 48, std::move(values)), frame_path);
  CHECK(run_cli("assess " + frame_path.string() + " --region 0,0,8,8").exit_code == 3);
  CHECK(run_cli("assess " + frame_path.string() + " --region 0,0,999,8").exit_code == 2);
}

TEST_CASE("survey emits byte-identical csv for the same seed") {
  TempDir dir;
  const fs::path plan_path = dir.path / "plan.json";
  std::ofstream(plan_path) << R"({
    "repeat_count": 2,
    "positions": [[0, 0, 1000], [300, 0, 2000], [0, 0, 300], [0, 0, 3500]]
  })";

  const std::string args = "survey --config " + plan_path.string() + " --seed 5 --format csv";
  const RunResult a = run_cli(args);
  const RunResult b = run_cli(args);
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);

  // the 300 mm row is flagged and carries no metrics
  std::istringstream lines(a.out);
  std::string line;
  std::getline(lines, line);  // header
  std::vector<std::string> rows;
  while (std::getline(lines, line)) {
    if (!line.empty()) rows.push_back(line);
  }
  REQUIRE(rows.size() == 4);
  CHECK(rows[2].find("out_of_view,1") != std::string::npos);
  CHECK(rows[0].find("green,0") != std::string::npos);
  CHECK(rows[3].find("red,0") != std::string::npos);

  const RunResult different = run_cli("survey --config " + plan_path.string() +
                                      " --seed 6 --format csv");
  CHECK(different.out != a.out);
}

TEST_CASE("survey default plan keeps green positions under 2 mm accuracy") {
  TempDir dir;
  const fs::path plan_path = dir.path / "plan.json";
  // default grid, shorter series to keep the test quick
  std::ofstream(plan_path) << R"({"repeat_count": 2})";

  const RunResult r = run_cli("survey --config " + plan_path.string() + " --seed 11");
  REQUIRE(r.exit_code == 0);
  const json report = json::parse(r.out);
  CHECK(testing::validate_schema(report, schema()).empty());
  REQUIRE(report["survey"].size() == 40);
  int green_rows = 0;
  for (const json& row : report["survey"]) {
    if (row["region"] == "green") {
      ++green_rows;
      CHECK(std::abs(row["accuracy_mm"].get<double>()) < 2.0);
    }
  }
  CHECK(green_rows > 0);
}

TEST_CASE("survey rejects invalid plans") {
  TempDir dir;
  const fs::path plan_path = dir.path / "plan.json";
  std::ofstream(plan_path) << R"({"positions": [], "repeat_count": 2})";
  CHECK(run_cli("survey --config " + plan_path.string()).exit_code == 4);

  std::ofstream(plan_path) << R"({"positions": [[0,0,1000]], "repeat_count": 0})";
  CHECK(run_cli("survey --config " + plan_path.string()).exit_code == 4);

  std::ofstream(plan_path) << "{not json";
  CHECK(run_cli("survey --config " + plan_path.string()).exit_code == 2);
}

TEST_CASE("trilaterate solves an exact problem") {
  TempDir dir;
  const fs::path problem_path = dir.path / "problem.json";
  // target (1000, 2000, 500)
  std::ofstream(problem_path) << R"({
    "sensors": [
      {"id": "a", "pos": [0, 0, 0]},
      {"id": "b", "pos": [4000, 0, 0]},
      {"id": "c", "pos": [0, 4000, 0]},
      {"id": "d", "pos": [1000, 1000, 3000]}
    ],
    "radii": [2291.287847477920, 3640.054944640259, 2291.287847477920, 2692.582403567252]
  })";

  const RunResult r = run_cli("trilaterate " + problem_path.string());
  REQUIRE(r.exit_code == 0);
  const json report = json::parse(r.out);
  CHECK(testing::validate_schema(report, schema()).empty());
  const auto pos = report["trilaterate"]["position"];
  CHECK(pos[0].get<double>() == doctest::Approx(1000.0).epsilon(1e-6));
  CHECK(pos[1].get<double>() == doctest::Approx(2000.0).epsilon(1e-6));
  CHECK(pos[2].get<double>() == doctest::Approx(500.0).epsilon(1e-6));
  CHECK(report["trilaterate"]["method"] == "normal_equations");
}

TEST_CASE("trilaterate exit code for degenerate geometry") {
  TempDir dir;
  const fs::path problem_path = dir.path / "collinear.json";
  std::ofstream(problem_path) << R"({
    "sensors": [
      {"id": "a", "pos": [0, 0, 0]},
      {"id": "b", "pos": [1000, 0, 0]},
      {"id": "c", "pos": [2000, 0, 0]}
    ],
    "radii": [500, 500, 500]
  })";
  CHECK(run_cli("trilaterate " + problem_path.string()).exit_code == 5);
}

TEST_CASE("casestudy reproduces the reference error table") {
  const fs::path fixture = repo_root() / "fixtures" / "casestudy_reference.json";
  const RunResult r = run_cli("casestudy " + fixture.string());
  REQUIRE(r.exit_code == 0);
  const json report = json::parse(r.out);
  CHECK(testing::validate_schema(report, schema()).empty());
  const json& errors = report["casestudy"]["errors"];
  CHECK(std::abs(errors["k1_mm"].get<double>() - 64.23) < 0.15);
  CHECK(std::abs(errors["k2_mm"].get<double>() - 78.99) < 0.15);
  CHECK(std::abs(errors["k3_mm"].get<double>() - 10.66) < 0.15);
  CHECK(std::abs(errors["fused_mm"].get<double>() - 25.61) < 0.15);
}

TEST_CASE("casestudy exit code for impossible baselines") {
  TempDir dir;
  const fs::path input_path = dir.path / "triangle.json";
  std::ofstream(input_path) << R"({
    "baselines": {"l12": 1, "l13": 1, "l23": 3},
    "obs": [
      {"role": "k1", "theta_rad": 0.5, "depth_mm": 4000},
      {"role": "k2", "theta_rad": 0.5, "depth_mm": 4000},
      {"role": "k3", "theta_rad": 0.1, "depth_mm": 3500}
    ]
  })";
  CHECK(run_cli("casestudy " + input_path.string()).exit_code == 6);
}

TEST_CASE("montecarlo reports the fusion benefit deterministically") {
  const RunResult a = run_cli("montecarlo --trials 1000 --sigma 20 --seed 7");
  REQUIRE(a.exit_code == 0);
  const json report = json::parse(a.out);
  CHECK(testing::validate_schema(report, schema()).empty());
  CHECK(report["montecarlo"]["fusion_beats_mean"] == true);
  CHECK(report["montecarlo"]["seed"] == 7);
  CHECK(report["montecarlo"]["median_fused_error_mm"].get<double>() <
        report["montecarlo"]["median_mean_single_error_mm"].get<double>());

  const RunResult b = run_cli("montecarlo --trials 1000 --sigma 20 --seed 7");
  CHECK(a.out == b.out);
}

TEST_CASE("--out writes the report to a file") {
  TempDir dir;
  const fs::path out_path = dir.path / "report.json";
  const RunResult r = run_cli("montecarlo --trials 10 --out " + out_path.string());
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.empty());
  const json report = parse_json_file(out_path.string());
  CHECK(report["command"] == "montecarlo");
}
