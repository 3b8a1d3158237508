#include "liespline/spline.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "liespline/error.hpp"
#include "liespline/lie.hpp"
#include "liespline/two_point.hpp"

namespace liespline {
namespace {

struct AlgorithmInfo {
  SplineAlgorithm algorithm;
  std::string_view name;
  int order;
  int continuity;
  bool global;
  bool velocities;
};

constexpr AlgorithmInfo kAlgorithms[] = {
    {SplineAlgorithm::PoeOrder3, "poe-3", 3, 2, false, false},
    {SplineAlgorithm::PoeOrder4, "poe-4", 4, 3, false, false},
    {SplineAlgorithm::PoeOrder3Vel, "poe-3-vel", 3, 1, false, true},
    {SplineAlgorithm::PoeOrder4Vel, "poe-4-vel", 4, 2, false, true},
    {SplineAlgorithm::GlobalOrder3, "global-3", 3, 2, true, false},
    {SplineAlgorithm::GlobalOrder4, "global-4", 4, 3, true, false},
    {SplineAlgorithm::GlobalOrder3Vel, "global-3-vel", 3, 1, true, true},
    {SplineAlgorithm::GlobalOrder4Vel, "global-4-vel", 4, 2, true, true},
};

const AlgorithmInfo& info(SplineAlgorithm algorithm) {
  for (const AlgorithmInfo& a : kAlgorithms) {
    if (a.algorithm == algorithm) return a;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown spline algorithm");
}

void validate(const KnotData& data, const AlgorithmInfo& alg) {
  const std::size_t n = data.times.size();
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "a spline needs at least two knots, got " + std::to_string(n));
  if (data.poses.size() != n) {
    throw Error(ErrorCode::InvalidArgument, std::to_string(n) + " knot times but " +
                                                std::to_string(data.poses.size()) + " poses");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(data.times[i])) {
      throw Error(ErrorCode::NonFinite, "knot time " + std::to_string(i) + " is not finite");
    }
    if (i > 0 && !(data.times[i] > data.times[i - 1])) {
      throw Error(ErrorCode::NonmonotoneKnots, "knot time " + std::to_string(i) + " (" +
                                                   std::to_string(data.times[i]) + ") does not exceed knot time " +
                                                   std::to_string(i - 1) + " (" + std::to_string(data.times[i - 1]) +
                                                   ")");
    }
    require_same_group(data.poses[0].group(), data.poses[i].group(), "knot poses");
  }
  const GroupTag group = data.poses[0].group();
  if (alg.velocities) {
    if (data.velocities.size() != n) {
      throw Error(ErrorCode::MissingVelocities, std::string(alg.name) + " needs one velocity per knot (" +
                                                    std::to_string(n) + "), got " +
                                                    std::to_string(data.velocities.size()));
    }
    for (const AlgebraVector& v : data.velocities) require_same_group(group, v.group(), "knot velocities");
  }
  const std::size_t jet_needed = alg.velocities ? (alg.order == 4 ? 2 : 0) : alg.order - 1;
  if (data.initial_jet.size() < jet_needed) {
    throw Error(ErrorCode::MissingVelocities, std::string(alg.name) + " needs " + std::to_string(jet_needed) +
                                                  " initial jet entries, got " +
                                                  std::to_string(data.initial_jet.size()));
  }
  for (std::size_t j = 0; j < jet_needed; ++j) {
    require_same_group(group, data.initial_jet[j].group(), "initial jet");
  }
}

Spline build(SplineAlgorithm algorithm, const KnotData& data, std::optional<GroupElement> base) {
  const AlgorithmInfo& alg = info(algorithm);
  validate(data, alg);
  const std::size_t segments = data.times.size() - 1;
  const GroupTag group = data.poses[0].group();

  // Coordinates of every knot (global) or per-segment increments (POE).
  GroupElement carrier = base.value_or(data.poses[0]);
  if (base) require_same_group(group, base->group(), "global base");
  std::vector<AlgebraVector> knot_xi;
  if (alg.global) {
    const GroupElement inv = carrier.inverse();
    for (std::size_t i = 0; i < data.poses.size(); ++i) {
      try {
        knot_xi.push_back(log(inv * data.poses[i]));
      } catch (const Error& e) {
        throw e.with_context("knot " + std::to_string(i) + " relative to the global base");
      }
    }
  }

  // Jet carried across knots, in the previous segment's normalized time (T_0 = 1).
  Jet star;
  if (!alg.velocities) {
    star.assign(data.initial_jet.begin(), data.initial_jet.begin() + (alg.order - 1));
  } else if (alg.order == 4) {
    star = {data.initial_jet[1]};
  }
  double prev_duration = 1.0;

  std::vector<SplineSegment> out;
  out.reserve(segments);
  for (std::size_t i = 1; i <= segments; ++i) {
    SplineSegment seg;
    seg.t0 = data.times[i - 1];
    seg.duration = data.times[i] - data.times[i - 1];
    const double delta = seg.duration / prev_duration;
    AlgebraVector xi_end = AlgebraVector::zero(group);
    if (alg.global) {
      seg.carrier = carrier;
      seg.xi_start = knot_xi[i - 1];
      xi_end = knot_xi[i];
    } else {
      seg.carrier = data.poses[i - 1];
      seg.xi_start = AlgebraVector::zero(group);
      try {
        xi_end = log(data.poses[i - 1].inverse() * data.poses[i]);
      } catch (const Error& e) {
        throw e.with_context("segment " + std::to_string(i));
      }
    }
    seg.delta_xi = xi_end - seg.xi_start;

    if (!alg.velocities) {
      double scale = 1.0;
      for (const AlgebraVector& s : star) {
        scale *= delta;
        seg.start_jet.push_back(scale * s);
      }
      seg.xi = initial_value_polynomial(seg.xi_start, xi_end, seg.start_jet, alg.order);
      seg.end_jet = velocity_jet(seg.xi, 1.0, alg.order - 1);
      star = seg.end_jet;
    } else {
      seg.start_jet.push_back(seg.duration * data.velocities[i - 1]);
      if (alg.order == 4) seg.start_jet.push_back(delta * delta * star[0]);
      seg.xi = boundary_value_polynomial(seg.xi_start, xi_end, seg.start_jet, seg.duration * data.velocities[i],
                                         alg.order);
      seg.end_jet = velocity_jet(seg.xi, 1.0, alg.order - 2);
      if (alg.order == 4) star = {seg.end_jet[1]};
    }
    prev_duration = seg.duration;
    out.push_back(std::move(seg));
  }
  return Spline(algorithm, std::move(out));
}

}  // namespace

std::string_view to_string(SplineAlgorithm algorithm) { return info(algorithm).name; }

SplineAlgorithm algorithm_from_string(std::string_view name) {
  for (const AlgorithmInfo& a : kAlgorithms) {
    if (a.name == name) return a.algorithm;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown spline algorithm '" + std::string(name) + "'");
}

int spline_order(SplineAlgorithm algorithm) { return info(algorithm).order; }
int continuity_class(SplineAlgorithm algorithm) { return info(algorithm).continuity; }
bool is_global(SplineAlgorithm algorithm) { return info(algorithm).global; }
bool uses_velocities(SplineAlgorithm algorithm) { return info(algorithm).velocities; }

Spline::Spline(SplineAlgorithm algorithm, std::vector<SplineSegment> segments)
    : algorithm_(algorithm), segments_(std::move(segments)) {
  if (segments_.empty()) throw Error(ErrorCode::InvalidArgument, "spline without segments");
}

double Spline::end_time() const { return segments_.back().t0 + segments_.back().duration; }

std::size_t Spline::segment_index(double t, KnotSide side) const {
  const double t_begin = start_time(), t_end = end_time();
  const double slack = 1e-12 * std::max(1.0, std::abs(t_end - t_begin));
  if (!(t >= t_begin - slack && t <= t_end + slack)) {
    throw Error(ErrorCode::OutOfDomain, "t = " + std::to_string(t) + " outside [" + std::to_string(t_begin) + ", " +
                                            std::to_string(t_end) + "]");
  }
  auto start_of = [](const SplineSegment& s, double v) { return s.t0 < v; };
  auto start_le = [](double v, const SplineSegment& s) { return v < s.t0; };
  // Number of segments starting at or before t (Right) or strictly before t (Left).
  const std::ptrdiff_t count =
      side == KnotSide::Right
          ? std::upper_bound(segments_.begin(), segments_.end(), t, start_le) - segments_.begin()
          : std::lower_bound(segments_.begin(), segments_.end(), t, start_of) - segments_.begin();
  return static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(count - 1, 0, segments_.size() - 1));
}

Jet Spline::velocity_jet(double t, int count, KnotSide side) const {
  const SplineSegment& seg = segments_[segment_index(t, side)];
  const double tau = std::clamp((t - seg.t0) / seg.duration, 0.0, 1.0);
  Jet jet = liespline::velocity_jet(seg.xi, tau, count);
  double scale = 1.0;
  for (AlgebraVector& v : jet) {
    scale /= seg.duration;
    v *= scale;
  }
  return jet;
}

GroupElement Spline::pose(double t, KnotSide side) const {
  const SplineSegment& seg = segments_[segment_index(t, side)];
  const double tau = std::clamp((t - seg.t0) / seg.duration, 0.0, 1.0);
  return seg.carrier * exp(seg.xi.eval(tau));
}

SplineSample Spline::eval(double t, KnotSide side) const {
  const SplineSegment& seg = segments_[segment_index(t, side)];
  const double tau = std::clamp((t - seg.t0) / seg.duration, 0.0, 1.0);
  const AlgebraVector xi = seg.xi.eval(tau);
  const Jet jet = liespline::velocity_jet(seg.xi, tau, 2);
  return {seg.carrier * exp(xi), xi, jet[0] / seg.duration, jet[1] / (seg.duration * seg.duration)};
}

Spline build_poe_c2_order3(const KnotData& data) { return build(SplineAlgorithm::PoeOrder3, data, std::nullopt); }
Spline build_poe_c3_order4(const KnotData& data) { return build(SplineAlgorithm::PoeOrder4, data, std::nullopt); }
Spline build_poe_c1_order3_vel(const KnotData& data) {
  return build(SplineAlgorithm::PoeOrder3Vel, data, std::nullopt);
}
Spline build_poe_c2_order4_vel(const KnotData& data) {
  return build(SplineAlgorithm::PoeOrder4Vel, data, std::nullopt);
}

Spline build_global_c2_order3(const KnotData& data, std::optional<GroupElement> base) {
  return build(SplineAlgorithm::GlobalOrder3, data, std::move(base));
}
Spline build_global_c3_order4(const KnotData& data, std::optional<GroupElement> base) {
  return build(SplineAlgorithm::GlobalOrder4, data, std::move(base));
}
Spline build_global_c1_order3_vel(const KnotData& data, std::optional<GroupElement> base) {
  return build(SplineAlgorithm::GlobalOrder3Vel, data, std::move(base));
}
Spline build_global_c2_order4_vel(const KnotData& data, std::optional<GroupElement> base) {
  return build(SplineAlgorithm::GlobalOrder4Vel, data, std::move(base));
}

Spline build_spline(SplineAlgorithm algorithm, const KnotData& data, std::optional<GroupElement> base) {
  if (base && !is_global(algorithm)) {
    throw Error(ErrorCode::InvalidArgument, std::string(to_string(algorithm)) + " does not take a global base");
  }
  return build(algorithm, data, std::move(base));
}

}  // namespace liespline
