// License: Apache 2.0. See LICENSE file in root directory.
// Copyright(c) 2026 depthqa contributors.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "depthqa/errors.hpp"

namespace depthqa {

struct SensorPose {
  std::string id;
  std::array<double, 3> position{};  // mm, shared world frame
};

// n sensor positions plus the n measured ranges to the common target.
struct TrilaterationProblem {
  std::vector<SensorPose> sensors;
  std::vector<double> radii_mm;
};

// Linearized sphere system relative to the first (anchor) sensor:
// row i-1 is sensors[i].position - sensors[0].position, and
// rhs[i-1] = (r_1^2 - r_i^2 + |row|^2) / 2. The unknown is
// target - sensors[0].position.
struct LinearSystem {
  std::vector<std::array<double, 3>> rows;
  std::vector<double> rhs;
};

LinearSystem build_linear_system(const TrilaterationProblem& problem);

enum class SolveMethod { NormalEquations, Svd };

const char* to_string(SolveMethod method);

struct Solution {
  std::array<double, 3> position{};   // mm
  std::vector<double> residuals_mm2;  // | |pos-k_i|^2 - r_i^2 | per sensor
  double condition_estimate = 1.0;
  SolveMethod method = SolveMethod::NormalEquations;
};

// Least-squares target position. Planar mode drops the z column and fixes
// z to the anchor sensor's z. Normal equations are used up to a condition
// estimate of 1e8, an SVD pseudo-inverse beyond that.
Solution solve(const TrilaterationProblem& problem, bool planar = false);

inline constexpr double kConditionSwitchThreshold = 1e8;

struct PlanarPoint {
  double x = 0.0;
  double y = 0.0;
};

double planar_distance(const PlanarPoint& a, const PlanarPoint& b);

// Places three sensors in the plane from their pairwise baseline lengths:
// k1 at the origin, k2 on the +x axis, k3 above it (Heron height).
// Throws DegenerateTriangle unless the strict triangle inequality holds.
std::array<SensorPose, 3> layout_triangle(double l12_mm, double l13_mm, double l23_mm);

enum class SensorRole { K1, K2, K3 };

const char* to_string(SensorRole role);

struct RadiusObservation {
  double theta_prime_rad = 0.0;
  double radius_mm = 0.0;
};

// Converts a raw (theta, depth) observation into the sight angle theta' and
// the range to the target. Roles k1 and k2 measure theta from the baseline
// (theta' = pi/2 - theta, r = D / sin theta'); k3 measures from its optical
// axis (theta' = theta, r = D / cos theta').
RadiusObservation observation_to_radius(SensorRole role, double theta_rad, double depth_mm);

// Position of the target as seen by one sensor alone.
PlanarPoint single_sensor_position(SensorRole role, const SensorPose& pose,
                                   double theta_prime_rad, double depth_mm);

struct Observation {
  SensorRole role = SensorRole::K1;
  double theta_rad = 0.0;
  double depth_mm = 0.0;
};

struct CaseStudyInput {
  double l12_mm = 0.0;
  double l13_mm = 0.0;
  double l23_mm = 0.0;
  std::array<Observation, 3> observations{};  // ordered k1, k2, k3
  std::optional<PlanarPoint> ground_truth;

  void validate() const;
};

struct CaseStudyErrors {
  std::array<double, 3> single_mm{};  // |truth - O_ki|
  double fused_mm = 0.0;              // |truth - O'|
  double mean_single_mm = 0.0;
};

CaseStudyErrors error_table(const std::array<PlanarPoint, 3>& singles, const PlanarPoint& fused,
                            const PlanarPoint& truth);

struct CaseStudyReport {
  std::array<SensorPose, 3> sensors{};
  std::array<double, 3> radii_mm{};
  std::array<PlanarPoint, 3> single_positions{};
  PlanarPoint fused{};
  Solution solution;
  std::optional<CaseStudyErrors> errors;
};

// Three-sensor pipeline: triangle layout, per-sensor radius conversion,
// planar least-squares fusion, per-sensor baselines, and the error table
// when a ground truth is supplied.
CaseStudyReport run_case_study(const CaseStudyInput& input);

// Monte Carlo comparison of the fused estimate against the single-sensor
// baselines under i.i.d. Gaussian range noise. Each trial perturbs the
// three sphere radii and re-runs the full case-study pipeline on the
// corresponding noisy observations.
struct MonteCarloConfig {
  double l12_mm = 0.0;
  double l13_mm = 0.0;
  double l23_mm = 0.0;
  PlanarPoint ground_truth{};
  double sigma_mm = 20.0;
  int trials = 1000;
  std::uint64_t seed = 7;
};

struct MonteCarloResult {
  int trials = 0;
  double sigma_mm = 0.0;
  std::uint64_t seed = 0;
  double median_fused_error_mm = 0.0;
  double median_mean_single_error_mm = 0.0;
  std::array<double, 3> median_single_error_mm{};
  bool fusion_beats_mean = false;
};

MonteCarloResult run_monte_carlo(const MonteCarloConfig& config);

// Reference three-sensor rig for the localization comparison; reproduces
// the four reported positions exactly.
MonteCarloConfig reference_monte_carlo_config();
CaseStudyInput reference_case_study_input();

}  // namespace depthqa
