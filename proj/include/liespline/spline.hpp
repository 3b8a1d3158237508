#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "liespline/group.hpp"
#include "liespline/polynomial.hpp"

namespace liespline {

/// Interpolation input. Velocities and jets are in physical time units.
struct KnotData {
  std::vector<double> times;
  std::vector<GroupElement> poses;
  /// One velocity per knot; used by the velocity-prescribed builders.
  std::vector<AlgebraVector> velocities;
  /// [v0, v0', v0''] at t0, indexed by derivative order. The velocity-prescribed
  /// builders take v0 from `velocities` and only read entry 1.
  Jet initial_jet;
};

enum class SplineAlgorithm {
  PoeOrder3,         ///< C2, initial jet
  PoeOrder4,         ///< C3, initial jet
  PoeOrder3Vel,      ///< C1, knot velocities
  PoeOrder4Vel,      ///< C2, knot velocities plus v0'
  GlobalOrder3,
  GlobalOrder4,
  GlobalOrder3Vel,
  GlobalOrder4Vel,
};

std::string_view to_string(SplineAlgorithm algorithm);
SplineAlgorithm algorithm_from_string(std::string_view name);
int spline_order(SplineAlgorithm algorithm);
/// Number of continuous velocity derivatives (class C^p has p - 1 of them, counting v itself).
int continuity_class(SplineAlgorithm algorithm);
bool is_global(SplineAlgorithm algorithm);
bool uses_velocities(SplineAlgorithm algorithm);

struct SplineSegment {
  double t0 = 0.0;
  double duration = 0.0;
  /// Pose carrying the segment: h_{i-1} for POE splines, the global base otherwise.
  GroupElement carrier;
  /// Coordinates at segment start (zero for POE) and their increment over the segment.
  AlgebraVector xi_start;
  AlgebraVector delta_xi;
  /// Velocity jet entering the segment, rescaled to the segment's normalized time.
  Jet start_jet;
  /// Velocity jet leaving the segment in the same normalized time (before rescaling).
  Jet end_jet;
  CoordinatePolynomial xi;
};

enum class KnotSide { Right, Left };

struct SplineSample {
  GroupElement pose;
  AlgebraVector xi;            ///< coordinates relative to the segment carrier
  AlgebraVector velocity;      ///< left-trivialized, per unit time
  AlgebraVector acceleration;  ///< its time derivative
};

class Spline {
 public:
  Spline(SplineAlgorithm algorithm, std::vector<SplineSegment> segments);

  SplineAlgorithm algorithm() const { return algorithm_; }
  int order() const { return spline_order(algorithm_); }
  GroupTag group() const { return segments_.front().carrier.group(); }
  const std::vector<SplineSegment>& segments() const { return segments_; }
  double start_time() const { return segments_.front().t0; }
  double end_time() const;

  /// Segment containing t. Interior knots belong to the right segment unless side is Left.
  std::size_t segment_index(double t, KnotSide side = KnotSide::Right) const;

  SplineSample eval(double t, KnotSide side = KnotSide::Right) const;
  GroupElement pose(double t, KnotSide side = KnotSide::Right) const;
  /// [v, v', v''] in time units, count <= 3.
  Jet velocity_jet(double t, int count, KnotSide side = KnotSide::Right) const;

 private:
  SplineAlgorithm algorithm_;
  std::vector<SplineSegment> segments_;
};

/// Product-of-exponentials family: segments h_{i-1} exp xi_i(tau).
Spline build_poe_c2_order3(const KnotData& data);
Spline build_poe_c3_order4(const KnotData& data);
Spline build_poe_c1_order3_vel(const KnotData& data);
Spline build_poe_c2_order4_vel(const KnotData& data);

/// Global-chart family: one chart base exp xi(t). The base defaults to the first pose.
Spline build_global_c2_order3(const KnotData& data, std::optional<GroupElement> base = std::nullopt);
Spline build_global_c3_order4(const KnotData& data, std::optional<GroupElement> base = std::nullopt);
Spline build_global_c1_order3_vel(const KnotData& data, std::optional<GroupElement> base = std::nullopt);
Spline build_global_c2_order4_vel(const KnotData& data, std::optional<GroupElement> base = std::nullopt);

Spline build_spline(SplineAlgorithm algorithm, const KnotData& data,
                    std::optional<GroupElement> base = std::nullopt);

}  // namespace liespline
