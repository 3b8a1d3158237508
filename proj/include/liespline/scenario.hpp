#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <json.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "liespline/group.hpp"

namespace liespline::cli {

/// Malformed or inconsistent scenario input. `field` is a dotted path such as "knots.times[3]".
class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(std::string field, const std::string& message)
      : std::runtime_error("scenario field '" + field + "': " + message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

enum class Mode {
  TwoPointIv,
  TwoPointBv,
  Spline,  ///< one of the eight spline algorithms, see Scenario::algorithm
  Bezier,
  RodReference,
};

/// Pose as written in the file. Kept verbatim so serialization is lossless.
struct PoseSpec {
  enum class Encoding { Matrix, ExpCoords };
  Encoding encoding = Encoding::Matrix;
  std::array<double, 9> rotation{1, 0, 0, 0, 1, 0, 0, 0, 1};  ///< row-major
  std::array<double, 3> translation{0, 0, 0};
  std::vector<double> coords;  ///< exp coordinates [rot; trans]

  GroupElement to_element(GroupTag group) const;
  bool operator==(const PoseSpec&) const = default;
};

using Vec = std::vector<double>;

/// Explicit knot data; velocities and jets in time units, [rot; trans] layout.
struct KnotSpec {
  Vec times;
  std::vector<PoseSpec> poses;
  std::vector<Vec> velocities;
  std::vector<Vec> initial_jet;
  bool operator==(const KnotSpec&) const = default;
};

/// Analytic motion base * exp(sum_j c_j t^j), j >= 1, sampled at knot_times.
struct MotionSpec {
  PoseSpec base;
  std::vector<Vec> coefficients;  ///< c_1, c_2, ...
  Vec knot_times;
  bool operator==(const MotionSpec&) const = default;
};

/// Random walk of knots, for stress runs. Seeded; deterministic per platform.
struct RandomSpec {
  int count = 6;
  std::uint64_t seed = 1;
  double max_rot = 0.5;
  double max_trans = 0.5;
  bool operator==(const RandomSpec&) const = default;
};

/// Uniform straight rod in SI units; exactly one end wrench [M; F] is given.
struct RodSpec {
  double length = 0.0;
  double youngs_modulus = 0.0;
  double shear_modulus = 0.0;
  double width = 0.0;
  double height = 0.0;
  std::optional<Vec> start_wrench;
  std::optional<Vec> terminal_wrench;
  int steps = 2000;           ///< minimum reference steps over the full rod or segment
  int knots = 5;              ///< spline modes
  double segment_length = 1.0;  ///< two-point modes: interpolate over [0, T]
  bool operator==(const RodSpec&) const = default;
};

struct SweepSpec {
  std::string parameter;  ///< segment_length, knots, samples or steps
  Vec values;
  std::string metric = "max";  ///< max or midpoint
  bool operator==(const SweepSpec&) const = default;
};

struct OutputSpec {
  int samples = 101;
  std::string dir;
  bool operator==(const OutputSpec&) const = default;
};

struct Scenario {
  std::string name;
  std::string description;
  std::string reproduces;
  GroupTag group = GroupTag::SE3;
  std::string mode_name;  ///< as written: two-point-iv, poe-3, bezier, ...
  std::vector<std::string> compare;  ///< further spline modes evaluated on the same data
  std::vector<int> orders;           ///< two-point orders (default {3})
  std::optional<KnotSpec> knots;
  std::optional<MotionSpec> motion;
  std::optional<RandomSpec> random;
  std::optional<RodSpec> rod;
  std::optional<PoseSpec> base;
  std::optional<SweepSpec> sweep;
  OutputSpec output;

  Mode mode() const;
  bool operator==(const Scenario&) const = default;
};

/// Parses and validates. Throws ScenarioError naming the offending field.
Scenario parse_scenario(const nlohmann::json& doc);
Scenario load_scenario(const std::filesystem::path& file);
nlohmann::json to_json(const Scenario& scenario);

}  // namespace liespline::cli
