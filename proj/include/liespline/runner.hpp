#pragma once

#include <cstdint>
#include <filesystem>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "liespline/rod.hpp"
#include "liespline/scenario.hpp"

namespace liespline::cli {

struct RunOptions {
  std::optional<int> samples;          ///< overrides output.samples
  std::optional<std::uint64_t> seed;   ///< overrides random.seed
};

struct Row {
  double t = 0.0;
  GroupElement pose;
  AlgebraVector xi;  ///< log of (chart origin)^-1 pose, continued across rows
  std::optional<AlgebraVector> velocity;
  std::optional<PoseError> error;
};

struct VariantResult {
  std::string label;
  std::vector<Row> rows;
  bool has_reference = false;
  PoseError max_error;
  PoseError mean_error;
  PoseError midpoint_error;  ///< at the middle row (odd row counts) or the nearer of the two
  std::optional<double> knot_pose_jump;      ///< splines: max pose mismatch across interior knots
  std::optional<double> knot_velocity_jump;  ///< splines: max jump of continuous velocity derivatives
  double max_xi_jump = 0.0;                  ///< largest |xi_{i+1} - xi_i| between rows
  std::vector<double> control_distances;     ///< bezier: distance of the curve from each interior control pose
};

struct RunResult {
  std::string scenario;
  std::vector<VariantResult> variants;
};

struct SlopeFit {
  std::string label;
  std::optional<double> eps_r;
  std::optional<double> eps_p;
};

struct SweepResult {
  std::string parameter;
  std::string metric;
  std::vector<double> values;
  std::vector<RunResult> runs;  ///< in the order of values
  std::vector<SlopeFit> slopes;
};

/// Throws ScenarioError for inconsistent data and liespline::Error from the numerics.
RunResult run_scenario(const Scenario& scenario, const RunOptions& options = {});

/// Runs every value concurrently; results are collected in value order.
SweepResult run_sweep(const Scenario& scenario, const SweepSpec& sweep, const RunOptions& options = {});

/// Copy of the scenario with one sweep parameter replaced.
Scenario with_parameter(Scenario scenario, const std::string& parameter, double value);

/// 17 significant digits, "nan" for missing values.
std::string format_double(double value);

/// Column layout: t, R (9, row-major), r (3, not for SO3), xi (dim), v (dim), eps_r, eps_p.
void write_csv(std::ostream& out, const VariantResult& variant, GroupTag group);
nlohmann::json summary_json(const Scenario& scenario, const RunResult& result);
nlohmann::json sweep_json(const Scenario& scenario, const SweepResult& result);

/// Writes <name>_<label>.csv per variant and <name>_summary.json; returns the paths.
std::vector<std::filesystem::path> write_run(const Scenario& scenario, const RunResult& result,
                                             const std::filesystem::path& dir);
/// Writes <name>_sweep.csv (one row per value and variant) and <name>_sweep.json.
std::vector<std::filesystem::path> write_sweep(const Scenario& scenario, const SweepResult& result,
                                               const std::filesystem::path& dir);

}  // namespace liespline::cli
