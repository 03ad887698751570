// License: Apache 2.0. See LICENSE file in root directory.
// Copyright(c) 2026 depthqa contributors.

#include "depthqa/trilateration.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "depthqa/detrand.hpp"

namespace depthqa {

namespace {

constexpr double kDenominatorEps = 1e-12;

bool finite3(const std::array<double, 3>& p) {
  return std::isfinite(p[0]) && std::isfinite(p[1]) && std::isfinite(p[2]);
}

void validate_problem(const TrilaterationProblem& problem) {
  if (problem.sensors.size() < 3) {
    throw DegenerateGeometry("need at least 3 sensors, got " +
                             std::to_string(problem.sensors.size()));
  }
  if (problem.sensors.size() != problem.radii_mm.size()) {
    throw DimensionMismatch("sensor count " + std::to_string(problem.sensors.size()) +
                            " does not match radius count " +
                            std::to_string(problem.radii_mm.size()));
  }
  for (const SensorPose& s : problem.sensors) {
    if (!finite3(s.position)) {
      throw NoFiniteSolution("non-finite sensor position for '" + s.id + "'");
    }
  }
  for (const double r : problem.radii_mm) {
    if (!std::isfinite(r) || r <= 0.0) {
      throw NoFiniteSolution("radii must be finite and positive");
    }
  }
}

double median_of(std::vector<double> values) {
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + mid, values.end());
  double m = values[mid];
  if (values.size() % 2 == 0) {
    const auto lower = std::max_element(values.begin(), values.begin() + mid);
    m = 0.5 * (m + *lower);
  }
  return m;
}

}  // namespace

LinearSystem build_linear_system(const TrilaterationProblem& problem) {
  validate_problem(problem);
  const auto& anchor = problem.sensors.front().position;
  const double r1 = problem.radii_mm.front();

  LinearSystem sys;
  sys.rows.reserve(problem.sensors.size() - 1);
  sys.rhs.reserve(problem.sensors.size() - 1);
  for (std::size_t i = 1; i < problem.sensors.size(); ++i) {
    const auto& p = problem.sensors[i].position;
    const std::array<double, 3> row{p[0] - anchor[0], p[1] - anchor[1], p[2] - anchor[2]};
    const double baseline_sq = row[0] * row[0] + row[1] * row[1] + row[2] * row[2];
    const double ri = problem.radii_mm[i];
    sys.rows.push_back(row);
    sys.rhs.push_back(0.5 * (r1 * r1 - ri * ri + baseline_sq));
  }

  // Collinear sensors cannot localize in any mode.
  Eigen::MatrixXd a(sys.rows.size(), 3);
  for (std::size_t i = 0; i < sys.rows.size(); ++i) {
    a.row(static_cast<Eigen::Index>(i)) << sys.rows[i][0], sys.rows[i][1], sys.rows[i][2];
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  if (svd.rank() < 2) {
    throw DegenerateGeometry("sensor positions are collinear");
  }
  return sys;
}

const char* to_string(SolveMethod method) {
  return method == SolveMethod::NormalEquations ? "normal_equations" : "svd";
}

Solution solve(const TrilaterationProblem& problem, bool planar) {
  const LinearSystem sys = build_linear_system(problem);
  const int dims = planar ? 2 : 3;
  const auto rows = static_cast<Eigen::Index>(sys.rows.size());

  Eigen::MatrixXd a(rows, dims);
  Eigen::VectorXd b(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (int d = 0; d < dims; ++d) {
      a(i, d) = sys.rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(d)];
    }
    b(i) = sys.rhs[static_cast<std::size_t>(i)];
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.rank() < dims) {
    throw DegenerateGeometry(planar ? "planar solve needs non-collinear sensors"
                                    : "3d solve needs non-coplanar sensors");
  }
  const double sigma_max = svd.singularValues()(0);
  const double sigma_min = svd.singularValues()(dims - 1);
  const double condition = sigma_max / sigma_min;

  Solution solution;
  solution.condition_estimate = condition;
  Eigen::VectorXd x;
  if (condition <= kConditionSwitchThreshold) {
    solution.method = SolveMethod::NormalEquations;
    x = (a.transpose() * a).ldlt().solve(a.transpose() * b);
  } else {
    solution.method = SolveMethod::Svd;
    x = svd.solve(b);
  }

  const auto& anchor = problem.sensors.front().position;
  solution.position = {anchor[0] + x(0), anchor[1] + x(1),
                       planar ? anchor[2] : anchor[2] + x(2)};
  if (!finite3(solution.position)) {
    throw NoFiniteSolution("solver produced a non-finite position");
  }

  solution.residuals_mm2.reserve(problem.sensors.size());
  for (std::size_t i = 0; i < problem.sensors.size(); ++i) {
    const auto& p = problem.sensors[i].position;
    const double dx = solution.position[0] - p[0];
    const double dy = solution.position[1] - p[1];
    const double dz = solution.position[2] - p[2];
    const double ri = problem.radii_mm[i];
    solution.residuals_mm2.push_back(std::abs(dx * dx + dy * dy + dz * dz - ri * ri));
  }
  return solution;
}

double planar_distance(const PlanarPoint& a, const PlanarPoint& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

std::array<SensorPose, 3> layout_triangle(double l12_mm, double l13_mm, double l23_mm) {
  if (!(l12_mm > 0.0 && l13_mm > 0.0 && l23_mm > 0.0) || !std::isfinite(l12_mm) ||
      !std::isfinite(l13_mm) || !std::isfinite(l23_mm)) {
    throw DegenerateTriangle("baseline lengths must be finite and positive");
  }
  if (l12_mm + l13_mm <= l23_mm || l12_mm + l23_mm <= l13_mm || l13_mm + l23_mm <= l12_mm) {
    throw DegenerateTriangle("baseline lengths violate the strict triangle inequality");
  }
  const double s = 0.5 * (l12_mm + l13_mm + l23_mm);  // semiperimeter
  const double heron = s * (s - l12_mm) * (s - l13_mm) * (s - l23_mm);
  const double y3 = 2.0 * std::sqrt(std::max(0.0, heron)) / l12_mm;
  if (!(y3 > 1e-9 * s)) {
    throw DegenerateTriangle("triangle area is numerically zero");
  }
  // Signed form of sqrt(l13^2 - y3^2); keeps pairwise distances exact when
  // the angle at k1 is obtuse. Factored to avoid cancellation when l13 ~ l23.
  const double x3 =
      (l12_mm * l12_mm + (l13_mm - l23_mm) * (l13_mm + l23_mm)) / (2.0 * l12_mm);
  return {SensorPose{"k1", {0.0, 0.0, 0.0}},
          SensorPose{"k2", {l12_mm, 0.0, 0.0}},
          SensorPose{"k3", {x3, y3, 0.0}}};
}

const char* to_string(SensorRole role) {
  switch (role) {
    case SensorRole::K1: return "k1";
    case SensorRole::K2: return "k2";
    case SensorRole::K3: return "k3";
  }
  return "?";
}

RadiusObservation observation_to_radius(SensorRole role, double theta_rad, double depth_mm) {
  RadiusObservation out;
  if (role == SensorRole::K3) {
    out.theta_prime_rad = theta_rad;
    const double denom = std::cos(out.theta_prime_rad);
    if (std::abs(denom) < kDenominatorEps) {
      throw DivisionByZero("cos(theta') vanishes for role k3");
    }
    out.radius_mm = depth_mm / denom;
  } else {
    out.theta_prime_rad = M_PI / 2.0 - theta_rad;
    const double denom = std::sin(out.theta_prime_rad);
    if (std::abs(denom) < kDenominatorEps) {
      throw DivisionByZero("sin(theta') vanishes for role k1/k2");
    }
    out.radius_mm = depth_mm / denom;
  }
  return out;
}

PlanarPoint single_sensor_position(SensorRole role, const SensorPose& pose,
                                   double theta_prime_rad, double depth_mm) {
  const double tan_theta = std::tan(theta_prime_rad);
  switch (role) {
    case SensorRole::K1:
    case SensorRole::K2: {
      if (std::abs(tan_theta) < kDenominatorEps) {
        throw DivisionByZero("tan(theta') vanishes");
      }
      const double offset = depth_mm / tan_theta;
      if (role == SensorRole::K1) {
        return {pose.position[0] + offset, pose.position[1] + depth_mm};
      }
      return {pose.position[0] - offset, pose.position[1] + depth_mm};
    }
    case SensorRole::K3:
      return {pose.position[0] - depth_mm * tan_theta, pose.position[1] - depth_mm};
  }
  throw InvalidObservation("unknown sensor role");
}

void CaseStudyInput::validate() const {
  const std::array<SensorRole, 3> expected{SensorRole::K1, SensorRole::K2, SensorRole::K3};
  for (std::size_t i = 0; i < 3; ++i) {
    const Observation& obs = observations[i];
    if (obs.role != expected[i]) {
      throw InvalidObservation("observations must be ordered k1, k2, k3");
    }
    if (!(obs.depth_mm > 0.0) || !std::isfinite(obs.depth_mm)) {
      throw InvalidObservation("depth must be positive and finite");
    }
    if (!(obs.theta_rad >= 0.0 && obs.theta_rad <= M_PI / 2.0)) {
      throw InvalidObservation("theta must lie in [0, pi/2]");
    }
  }
}

CaseStudyErrors error_table(const std::array<PlanarPoint, 3>& singles, const PlanarPoint& fused,
                            const PlanarPoint& truth) {
  CaseStudyErrors errors;
  double sum = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    errors.single_mm[i] = planar_distance(truth, singles[i]);
    sum += errors.single_mm[i];
  }
  errors.fused_mm = planar_distance(truth, fused);
  errors.mean_single_mm = sum / 3.0;
  return errors;
}

CaseStudyReport run_case_study(const CaseStudyInput& input) {
  input.validate();

  CaseStudyReport report;
  report.sensors = layout_triangle(input.l12_mm, input.l13_mm, input.l23_mm);

  TrilaterationProblem problem;
  for (std::size_t i = 0; i < 3; ++i) {
    const Observation& obs = input.observations[i];
    const RadiusObservation ro = observation_to_radius(obs.role, obs.theta_rad, obs.depth_mm);
    report.radii_mm[i] = ro.radius_mm;
    report.single_positions[i] =
        single_sensor_position(obs.role, report.sensors[i], ro.theta_prime_rad, obs.depth_mm);
    problem.sensors.push_back(report.sensors[i]);
    problem.radii_mm.push_back(ro.radius_mm);
  }

  report.solution = solve(problem, /*planar=*/true);
  report.fused = {report.solution.position[0], report.solution.position[1]};
  if (input.ground_truth) {
    report.errors = error_table(report.single_positions, report.fused, *input.ground_truth);
  }
  return report;
}

MonteCarloResult run_monte_carlo(const MonteCarloConfig& config) {
  if (config.trials < 1) {
    throw InvalidPlan("monte carlo needs at least 1 trial");
  }
  if (!(config.sigma_mm >= 0.0) || !std::isfinite(config.sigma_mm)) {
    throw InvalidPlan("sigma must be finite and non-negative");
  }
  const auto sensors = layout_triangle(config.l12_mm, config.l13_mm, config.l23_mm);
  const double x2 = sensors[1].position[0];
  const double x3 = sensors[2].position[0];
  const double y3 = sensors[2].position[1];
  const PlanarPoint truth = config.ground_truth;
  if (!(truth.y > 0.0) || !(truth.y < y3)) {
    throw InvalidPlan("ground truth must lie between the k1-k2 baseline and k3");
  }

  // Noise-free observation tuples for the truth target. k1 and k2 observe the
  // depth truth.y along +y, k3 observes y3 - truth.y along -y.
  struct TrueObs {
    double theta_prime;
    double depth;
    double radius;
  };
  const std::array<TrueObs, 3> exact{
      TrueObs{std::atan2(truth.y, truth.x), truth.y, std::hypot(truth.x, truth.y)},
      TrueObs{std::atan2(truth.y, x2 - truth.x), truth.y, std::hypot(x2 - truth.x, truth.y)},
      TrueObs{std::atan2(x3 - truth.x, y3 - truth.y), y3 - truth.y,
              std::hypot(x3 - truth.x, y3 - truth.y)}};

  TrilaterationProblem problem;
  problem.sensors.assign(sensors.begin(), sensors.end());
  problem.radii_mm.resize(3);

  std::vector<double> fused_errors;
  std::array<std::vector<double>, 3> single_errors;
  std::vector<double> mean_single_errors;
  fused_errors.reserve(static_cast<std::size_t>(config.trials));
  mean_single_errors.reserve(static_cast<std::size_t>(config.trials));

  constexpr std::uint64_t kNoiseTag = 0x6d636e6f69736531ull;
  const std::array<SensorRole, 3> roles{SensorRole::K1, SensorRole::K2, SensorRole::K3};
  for (int trial = 0; trial < config.trials; ++trial) {
    std::array<PlanarPoint, 3> singles;
    double sum_single = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
      const std::uint64_t base = detrand::mix(detrand::mix(config.seed, kNoiseTag),
                                              static_cast<std::uint64_t>(trial) * 3 + i);
      const double noisy_radius =
          exact[i].radius +
          config.sigma_mm * detrand::gaussian(detrand::mix(base, 0), detrand::mix(base, 1));
      // Realize the noisy radius in the sight angle with the depth held at
      // its measured value, so the sphere radii carry exactly the injected
      // i.i.d. noise. A range shorter than the depth is geometrically
      // impossible and clamps to the head-on angle.
      const double ratio = std::min(1.0, exact[i].depth / noisy_radius);
      double theta_prime;
      if (i == 2) {
        // acos drops the side of the optical axis; restore it from the truth.
        theta_prime = ratio >= 1.0 ? 0.0 : std::acos(ratio);
        if (exact[i].theta_prime < 0.0) theta_prime = -theta_prime;
      } else {
        theta_prime = std::asin(ratio);
        if (exact[i].theta_prime > M_PI / 2.0) theta_prime = M_PI - theta_prime;
      }
      problem.radii_mm[i] = exact[i].depth / (i == 2 ? std::cos(theta_prime)
                                                     : std::sin(theta_prime));
      singles[i] = single_sensor_position(roles[i], sensors[i], theta_prime, exact[i].depth);
      const double err = planar_distance(truth, singles[i]);
      single_errors[i].push_back(err);
      sum_single += err;
    }
    const Solution solution = solve(problem, /*planar=*/true);
    fused_errors.push_back(
        planar_distance(truth, PlanarPoint{solution.position[0], solution.position[1]}));
    mean_single_errors.push_back(sum_single / 3.0);
  }

  MonteCarloResult result;
  result.trials = config.trials;
  result.sigma_mm = config.sigma_mm;
  result.seed = config.seed;
  result.median_fused_error_mm = median_of(std::move(fused_errors));
  result.median_mean_single_error_mm = median_of(std::move(mean_single_errors));
  for (std::size_t i = 0; i < 3; ++i) {
    result.median_single_error_mm[i] = median_of(std::move(single_errors[i]));
  }
  result.fusion_beats_mean =
      result.median_fused_error_mm < result.median_mean_single_error_mm;
  return result;
}

// Baselines and observations reproducing the reference three-sensor
// comparison: single-sensor positions (2197.1, 4016.4), (2057.4, 3985.0),
// (2135.0, 3989.4) and fused position (2156.4, 4013.9) against the surveyed
// target (2135, 4000).
CaseStudyInput reference_case_study_input() {
  CaseStudyInput input;
  input.l12_mm = 4270.6949999999915;
  input.l13_mm = 7986.2656394937876;
  input.l23_mm = 7648.6128721622608;
  input.observations = {Observation{SensorRole::K1, 0.50056179002903978, 4016.4},
                        Observation{SensorRole::K2, 0.50698461494017355, 3985.0},
                        Observation{SensorRole::K3, 0.17453292519943303, 3507.2086895730049}};
  input.ground_truth = PlanarPoint{2135.0, 4000.0};
  return input;
}

MonteCarloConfig reference_monte_carlo_config() {
  const CaseStudyInput input = reference_case_study_input();
  MonteCarloConfig config;
  config.l12_mm = input.l12_mm;
  config.l13_mm = input.l13_mm;
  config.l23_mm = input.l23_mm;
  config.ground_truth = *input.ground_truth;
  return config;
}

}  // namespace depthqa
