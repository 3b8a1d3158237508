#include "liespline/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <numeric>
#include <random>

#include "liespline/bezier.hpp"
#include "liespline/error.hpp"
#include "liespline/lie.hpp"
#include "liespline/spline.hpp"
#include "liespline/two_point.hpp"

namespace liespline::cli {
namespace {

using nlohmann::json;

AlgebraVector to_algebra(GroupTag group, const Vec& v) {
  Coords c(algebra_dim(group));
  for (int i = 0; i < c.size(); ++i) c[i] = v.at(i);
  return AlgebraVector(group, c);
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = a + (b - a) * i / (n - 1);
  out.back() = b;
  return out;
}

/// Analytic motion base * exp(xi(t)).
struct Motion {
  GroupTag group;
  GroupElement base;
  std::vector<AlgebraVector> coefficients;  // c_1, c_2, ...

  AlgebraVector xi(double t, int deriv = 0) const {
    AlgebraVector out = AlgebraVector::zero(group);
    for (std::size_t j = 1; j <= coefficients.size(); ++j) {
      if (static_cast<int>(j) < deriv) continue;
      double f = 1.0;
      for (int d = 0; d < deriv; ++d) f *= static_cast<double>(j - d);
      out += f * std::pow(t, static_cast<int>(j) - deriv) * coefficients[j - 1];
    }
    return out;
  }
  GroupElement pose(double t) const { return base * exp(xi(t)); }
  Jet jet(double t, int count) const {
    std::vector<AlgebraVector> derivs;
    for (int d = 1; d <= count; ++d) derivs.push_back(xi(t, d));
    return jet_pushforward(xi(t), derivs, PushDirection::ToVelocity);
  }
};

Motion make_motion(const Scenario& s) {
  Motion m{s.group, s.motion->base.to_element(s.group), {}};
  for (const Vec& c : s.motion->coefficients) m.coefficients.push_back(to_algebra(s.group, c));
  return m;
}

struct RodSetup {
  RodModel model;
  AlgebraVector v0;
  RodCurve curve;
  int stride = 1;
};

RodSetup make_rod(const Scenario& s, int samples, int knots, double span) {
  const RodSpec& r = *s.rod;
  RodSetup out;
  out.model = RodModel::rectangular(r.length, r.youngs_modulus, r.shear_modulus, r.width, r.height);
  const long long granularity = std::lcm<long long>(samples - 1, std::max(1, knots - 1));
  const long long steps = granularity * ((r.steps + granularity - 1) / granularity);
  if (steps > 10000000) throw ScenarioError("output.samples", "rod station grid too large (" + std::to_string(steps) + ")");
  try {
    out.v0 = r.start_wrench ? out.model.strain_from_end_wrench(to_algebra(GroupTag::SE3, *r.start_wrench))
                            : start_strain_for_terminal_wrench(out.model, to_algebra(GroupTag::SE3, *r.terminal_wrench),
                                                               static_cast<int>(steps));
    out.curve = integrate_reference(out.model, out.v0, static_cast<int>(steps), span);
  } catch (const Error& e) {
    throw e.with_context("rod");
  }
  out.stride = static_cast<int>(steps / (samples - 1));
  return out;
}

AlgebraVector random_algebra(std::mt19937_64& rng, GroupTag group, double max_rot, double max_trans) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Coords c(algebra_dim(group));
  for (int i = 0; i < c.size(); ++i) c[i] = u(rng) * (i < 3 ? max_rot : max_trans) / std::sqrt(3.0);
  return AlgebraVector(group, c);
}

KnotData random_knots(const Scenario& s, std::uint64_t seed) {
  const RandomSpec& r = *s.random;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> step(0.7, 1.3);
  KnotData d;
  double t = 0.0;
  GroupElement h = exp(random_algebra(rng, s.group, r.max_rot, r.max_trans));
  for (int i = 0; i < r.count; ++i) {
    if (i > 0) {
      t += step(rng);
      h = h * exp(random_algebra(rng, s.group, r.max_rot, r.max_trans));
    }
    d.times.push_back(t);
    d.poses.push_back(h);
    d.velocities.push_back(random_algebra(rng, s.group, r.max_rot, r.max_trans));
  }
  for (int j = 0; j < 3; ++j) d.initial_jet.push_back(random_algebra(rng, s.group, r.max_rot, r.max_trans));
  return d;
}

KnotData explicit_knots(const Scenario& s) {
  KnotData d;
  d.times = s.knots->times;
  for (const PoseSpec& p : s.knots->poses) d.poses.push_back(p.to_element(s.group));
  for (const Vec& v : s.knots->velocities) d.velocities.push_back(to_algebra(s.group, v));
  for (const Vec& v : s.knots->initial_jet) d.initial_jet.push_back(to_algebra(s.group, v));
  return d;
}

KnotData motion_knots(const Scenario& s, const Motion& m) {
  KnotData d;
  d.times = s.motion->knot_times;
  for (double t : d.times) {
    d.poses.push_back(m.pose(t));
    d.velocities.push_back(m.jet(t, 1)[0]);
  }
  d.initial_jet = m.jet(d.times.front(), 3);
  return d;
}

std::string source_field(const Scenario& s) {
  if (s.knots) return "knots";
  if (s.motion) return "motion";
  if (s.random) return "random";
  return "rod";
}

/// Fills xi (continued chart), statistics and the xi jump bound.
void finish_variant(VariantResult& v, const GroupElement& origin) {
  const GroupElement inv = origin.inverse();
  for (std::size_t i = 0; i < v.rows.size(); ++i) {
    Row& row = v.rows[i];
    row.xi = i == 0 ? log(inv * row.pose) : log_near(inv * row.pose, v.rows[i - 1].xi);
    if (i > 0) v.max_xi_jump = std::max(v.max_xi_jump, (row.xi - v.rows[i - 1].xi).norm());
  }
  v.has_reference = !v.rows.empty() && v.rows.front().error.has_value();
  if (!v.has_reference) return;
  PoseError sum;
  for (const Row& row : v.rows) {
    v.max_error.eps_r = std::max(v.max_error.eps_r, row.error->eps_r);
    v.max_error.eps_p = std::max(v.max_error.eps_p, row.error->eps_p);
    sum.eps_r += row.error->eps_r;
    sum.eps_p += row.error->eps_p;
  }
  v.mean_error = {sum.eps_r / v.rows.size(), sum.eps_p / v.rows.size()};
  v.midpoint_error = *v.rows[v.rows.size() / 2].error;
}

/// Reference poses at the row times, if the scenario has one.
struct Reference {
  std::optional<Motion> motion;
  const RodSetup* rod = nullptr;
  std::optional<PoseError> error(std::size_t row, double t, const GroupElement& pose) const {
    if (motion) return pose_error(motion->pose(t), pose);
    if (rod) return pose_error(rod->curve.poses[row * rod->stride], pose);
    return std::nullopt;
  }
};

VariantResult run_spline(const Scenario& s, SplineAlgorithm alg, const KnotData& data,
                         std::optional<GroupElement> base, const std::vector<double>& times, const Reference& ref) {
  VariantResult v;
  v.label = std::string(to_string(alg));
  if (!is_global(alg)) base.reset();
  Spline spline = [&] {
    try {
      return build_spline(alg, data, base);
    } catch (const Error& e) {
      throw e.with_context(source_field(s) + " (" + v.label + ")");
    }
  }();
  for (std::size_t i = 0; i < times.size(); ++i) {
    Row row;
    row.t = times[i];
    row.pose = spline.pose(row.t);
    row.velocity = spline.velocity_jet(row.t, 1)[0];
    row.error = ref.error(i, row.t, row.pose);
    v.rows.push_back(std::move(row));
  }
  double pose_jump = 0.0, vel_jump = 0.0;
  const int continuous = std::min(3, continuity_class(alg));
  for (std::size_t k = 1; k + 1 < data.times.size(); ++k) {
    const double t = data.times[k];
    pose_jump = std::max(pose_jump, spline.pose(t, KnotSide::Left).distance(spline.pose(t, KnotSide::Right)));
    const Jet left = spline.velocity_jet(t, continuous, KnotSide::Left);
    const Jet right = spline.velocity_jet(t, continuous, KnotSide::Right);
    for (int j = 0; j < continuous; ++j) vel_jump = std::max(vel_jump, (left[j] - right[j]).norm());
  }
  v.knot_pose_jump = pose_jump;
  v.knot_velocity_jump = vel_jump;
  finish_variant(v, is_global(alg) ? spline.segments().front().carrier : data.poses.front());
  return v;
}

}  // namespace

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

RunResult run_scenario(const Scenario& s_in, const RunOptions& options) {
  Scenario s = s_in;
  if (options.samples) s.output.samples = *options.samples;
  if (options.seed && s.random) s.random->seed = *options.seed;
  if (s.output.samples < 2) throw ScenarioError("output.samples", "at least two samples");
  const int samples = s.output.samples;
  const Mode mode = s.mode();
  RunResult result;
  result.scenario = s.name;

  if (mode == Mode::RodReference) {
    const RodSetup rod = make_rod(s, samples, 1, 1.0);
    VariantResult v;
    v.label = s.mode_name;
    for (int i = 0; i < samples; ++i) {
      const std::size_t k = static_cast<std::size_t>(i) * rod.stride;
      Row row;
      row.t = rod.curve.taus[k];
      row.pose = rod.curve.poses[k];
      row.velocity = rod.curve.strains[k];
      v.rows.push_back(std::move(row));
    }
    finish_variant(v, GroupElement::identity(GroupTag::SE3));
    result.variants.push_back(std::move(v));
    return result;
  }

  if (mode == Mode::Bezier) {
    ControlNet net;
    for (const PoseSpec& p : s.knots->poses) net.push_back(p.to_element(s.group));
    const double t0 = s.knots->times.empty() ? 0.0 : s.knots->times.front();
    const double t1 = s.knots->times.empty() ? 1.0 : s.knots->times.back();
    VariantResult v;
    v.label = s.mode_name;
    std::vector<GroupElement> curve;
    try {
      curve = decasteljau_curve(net, samples);
    } catch (const Error& e) {
      throw e.with_context("knots.poses");
    }
    const std::vector<double> times = linspace(t0, t1, samples);
    for (int i = 0; i < samples; ++i) v.rows.push_back(Row{times[i], curve[i], {}, std::nullopt, std::nullopt});
    for (std::size_t k = 1; k + 1 < net.size(); ++k) {
      double closest = std::numeric_limits<double>::infinity();
      for (const GroupElement& h : curve) closest = std::min(closest, h.distance(net[k]));
      v.control_distances.push_back(closest);
    }
    finish_variant(v, net.front());
    result.variants.push_back(std::move(v));
    return result;
  }

  if (mode == Mode::TwoPointIv || mode == Mode::TwoPointBv) {
    const bool bv = mode == Mode::TwoPointBv;
    const std::vector<int> orders = s.orders.empty() ? std::vector<int>{3} : s.orders;
    const int max_order = *std::max_element(orders.begin(), orders.end());
    const int jet_needed = bv ? max_order - 2 : max_order - 1;
    // Normalized problem on tau in [0, 1]; jets in physical time, scaled below.
    GroupElement g0;
    AlgebraVector xi_bar;
    Jet jet;
    AlgebraVector v1;
    double t0 = 0.0, T = 1.0;
    std::optional<RodSetup> rod;
    Reference ref;
    std::vector<double> times;
    if (s.rod) {
      T = s.rod->segment_length;
      rod = make_rod(s, samples, 3, T);
      g0 = rod->curve.poses.front();
      xi_bar = rod->curve.xi.back();  // continued: the rod may twist past pi
      jet = strain_jet(rod->model, rod->v0, std::max(1, jet_needed));
      v1 = rod->curve.strains.back();
      for (int i = 0; i < samples; ++i) times.push_back(rod->curve.taus[static_cast<std::size_t>(i) * rod->stride]);
      ref.rod = &*rod;
    } else {
      KnotData d;
      if (s.motion) {
        ref.motion = make_motion(s);
        d = motion_knots(s, *ref.motion);
      } else {
        d = explicit_knots(s);
      }
      if (static_cast<int>(d.initial_jet.size()) < jet_needed) {
        throw ScenarioError(source_field(s) + ".initial_jet", "order " + std::to_string(max_order) + " needs " +
                                                                  std::to_string(jet_needed) + " jet entries");
      }
      if (bv && d.velocities.size() != 2) throw ScenarioError(source_field(s) + ".velocities", "needs both velocities");
      g0 = d.poses[0];
      try {
        xi_bar = log(g0.inverse() * d.poses[1]);
      } catch (const Error& e) {
        throw e.with_context(source_field(s) + ".poses[1]");
      }
      jet = d.initial_jet;
      if (bv) v1 = d.velocities[1];
      t0 = d.times[0];
      T = d.times[1] - d.times[0];
      times = linspace(d.times[0], d.times[1], samples);
    }
    for (int order : orders) {
      VariantResult v;
      v.label = s.mode_name + "-" + std::to_string(order);
      const AlgebraVector zero = AlgebraVector::zero(s.group);
      Jet scaled;
      double f = 1.0;
      for (int j = 0; j < (bv ? order - 2 : order - 1); ++j) {
        f *= T;
        scaled.push_back(f * jet[j]);
      }
      CoordinatePolynomial xi;
      try {
        xi = bv ? boundary_value_polynomial(zero, xi_bar, scaled, T * v1, order)
                : initial_value_polynomial(zero, xi_bar, scaled, order);
      } catch (const Error& e) {
        throw e.with_context(source_field(s));
      }
      for (std::size_t i = 0; i < times.size(); ++i) {
        const double tau = std::clamp((times[i] - t0) / T, 0.0, 1.0);
        Row row;
        row.t = times[i];
        row.pose = g0 * exp(xi.eval(tau));
        row.velocity = velocity_jet(xi, tau, 1)[0] / T;
        row.error = ref.error(i, row.t, row.pose);
        v.rows.push_back(std::move(row));
      }
      finish_variant(v, g0);
      result.variants.push_back(std::move(v));
    }
    return result;
  }

  // Spline modes.
  std::vector<SplineAlgorithm> algs{algorithm_from_string(s.mode_name)};
  for (const std::string& c : s.compare) algs.push_back(algorithm_from_string(c));
  KnotData data;
  std::optional<GroupElement> base;
  if (s.base) base = s.base->to_element(s.group);
  Reference ref;
  std::optional<RodSetup> rod;
  std::vector<double> times;
  if (s.rod) {
    rod = make_rod(s, samples, s.rod->knots, 1.0);
    try {
      data = rod_knot_data(rod->model, rod->curve, s.rod->knots);
    } catch (const Error& e) {
      throw e.with_context("rod.knots");
    }
    for (int i = 0; i < samples; ++i) times.push_back(rod->curve.taus[static_cast<std::size_t>(i) * rod->stride]);
    ref.rod = &*rod;
  } else {
    if (s.motion) {
      ref.motion = make_motion(s);
      data = motion_knots(s, *ref.motion);
      if (!base) base = ref.motion->base;
    } else if (s.random) {
      data = random_knots(s, s.random->seed);
    } else {
      data = explicit_knots(s);
    }
    times = linspace(data.times.front(), data.times.back(), samples);
  }
  for (SplineAlgorithm alg : algs) result.variants.push_back(run_spline(s, alg, data, base, times, ref));
  return result;
}

Scenario with_parameter(Scenario s, const std::string& parameter, double value) {
  auto as_count = [&](int min_value) {
    if (value != std::floor(value) || value < min_value || value > 1e7) {
      throw ScenarioError("sweep.values", "'" + parameter + "' needs integers >= " + std::to_string(min_value));
    }
    return static_cast<int>(value);
  };
  if (parameter == "segment_length") {
    if (!s.rod) throw ScenarioError("sweep.parameter", "segment_length sweeps need a rod");
    if (!(value > 0 && value <= 1)) throw ScenarioError("sweep.values", "segment_length must be in (0, 1]");
    s.rod->segment_length = value;
  } else if (parameter == "knots") {
    const int n = as_count(2);
    if (s.rod) {
      s.rod->knots = n;
    } else if (s.random) {
      s.random->count = n;
    } else if (s.motion) {
      s.motion->knot_times = linspace(s.motion->knot_times.front(), s.motion->knot_times.back(), n);
    } else {
      throw ScenarioError("sweep.parameter", "explicit knots cannot be resampled");
    }
  } else if (parameter == "samples") {
    s.output.samples = as_count(2);
  } else if (parameter == "steps") {
    if (!s.rod) throw ScenarioError("sweep.parameter", "steps sweeps need a rod");
    s.rod->steps = as_count(2);
  } else {
    throw ScenarioError("sweep.parameter", "unknown sweep parameter '" + parameter + "'");
  }
  return s;
}

SweepResult run_sweep(const Scenario& s, const SweepSpec& sweep, const RunOptions& options) {
  if (sweep.values.empty()) throw ScenarioError("sweep.values", "no values");
  if (sweep.metric != "max" && sweep.metric != "midpoint") {
    throw ScenarioError("sweep.metric", "expected 'max' or 'midpoint'");
  }
  std::vector<Scenario> variants;
  for (double value : sweep.values) variants.push_back(with_parameter(s, sweep.parameter, value));
  std::vector<std::future<RunResult>> pending;
  for (const Scenario& v : variants) {
    pending.push_back(std::async(std::launch::async, [&v, &options] { return run_scenario(v, options); }));
  }
  SweepResult out;
  out.parameter = sweep.parameter;
  out.metric = sweep.metric;
  out.values = sweep.values;
  for (auto& f : pending) out.runs.push_back(f.get());

  // Least-squares slope of log(error) against log(value), per variant.
  for (std::size_t k = 0; k < out.runs.front().variants.size(); ++k) {
    SlopeFit fit;
    fit.label = out.runs.front().variants[k].label;
    auto slope = [&](auto pick) -> std::optional<double> {
      std::vector<double> x, y;
      for (std::size_t i = 0; i < out.values.size(); ++i) {
        const VariantResult& v = out.runs[i].variants[k];
        const double e = pick(sweep.metric == "max" ? v.max_error : v.midpoint_error);
        if (!v.has_reference || !(out.values[i] > 0) || !(e > 0)) return std::nullopt;
        x.push_back(std::log(out.values[i]));
        y.push_back(std::log(e));
      }
      if (x.size() < 2) return std::nullopt;
      const double mx = std::accumulate(x.begin(), x.end(), 0.0) / x.size();
      const double my = std::accumulate(y.begin(), y.end(), 0.0) / y.size();
      double sxy = 0, sxx = 0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
      }
      return sxx > 0 ? std::optional<double>(sxy / sxx) : std::nullopt;
    };
    fit.eps_r = slope([](const PoseError& e) { return e.eps_r; });
    fit.eps_p = slope([](const PoseError& e) { return e.eps_p; });
    out.slopes.push_back(fit);
  }
  return out;
}

void write_csv(std::ostream& out, const VariantResult& variant, GroupTag group) {
  const int dim = algebra_dim(group);
  out << "t";
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) out << ",R" << i << j;
  }
  if (group != GroupTag::SO3) out << ",r0,r1,r2";
  for (int i = 0; i < dim; ++i) out << ",xi" << i;
  for (int i = 0; i < dim; ++i) out << ",v" << i;
  out << ",eps_r,eps_p\n";
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const Row& row : variant.rows) {
    out << format_double(row.t);
    const Eigen::Matrix3d& R = row.pose.rotation();
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) out << ',' << format_double(R(i, j));
    }
    if (group != GroupTag::SO3) {
      for (int i = 0; i < 3; ++i) out << ',' << format_double(row.pose.translation()[i]);
    }
    for (int i = 0; i < dim; ++i) out << ',' << format_double(row.xi[i]);
    for (int i = 0; i < dim; ++i) out << ',' << format_double(row.velocity ? (*row.velocity)[i] : nan);
    out << ',' << format_double(row.error ? row.error->eps_r : nan);
    out << ',' << format_double(row.error ? row.error->eps_p : nan) << '\n';
  }
}

namespace {

json variant_json(const VariantResult& v) {
  json j;
  j["label"] = v.label;
  j["rows"] = v.rows.size();
  if (v.has_reference) {
    j["max_eps_r"] = v.max_error.eps_r;
    j["max_eps_p"] = v.max_error.eps_p;
    j["max_eps"] = v.max_error.max();
    j["mean_eps_r"] = v.mean_error.eps_r;
    j["mean_eps_p"] = v.mean_error.eps_p;
    j["midpoint_eps_r"] = v.midpoint_error.eps_r;
    j["midpoint_eps_p"] = v.midpoint_error.eps_p;
  }
  if (v.knot_pose_jump) j["knot_pose_jump"] = *v.knot_pose_jump;
  if (v.knot_velocity_jump) j["knot_velocity_jump"] = *v.knot_velocity_jump;
  j["max_xi_jump"] = v.max_xi_jump;
  if (!v.control_distances.empty()) j["control_point_distances"] = v.control_distances;
  return j;
}

std::string file_label(const std::string& label) {
  std::string out = label;
  std::replace(out.begin(), out.end(), '/', '_');
  return out;
}

std::filesystem::path write_text(const std::filesystem::path& file, const std::string& text) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw ScenarioError("output.dir", "cannot write '" + file.string() + "'");
  out << text;
  if (!out) throw ScenarioError("output.dir", "write failed for '" + file.string() + "'");
  return file;
}

}  // namespace

json summary_json(const Scenario& s, const RunResult& result) {
  json j;
  j["scenario"] = s.name;
  j["mode"] = s.mode_name;
  j["group"] = std::string(to_string(s.group));
  json variants = json::array();
  double worst = 0.0;
  bool any = false;
  for (const VariantResult& v : result.variants) {
    variants.push_back(variant_json(v));
    if (v.has_reference && &v == &result.variants.front()) {
      worst = v.max_error.max();
      any = true;
    }
  }
  if (any) j["max_eps"] = worst;
  j["variants"] = variants;
  return j;
}

json sweep_json(const Scenario& s, const SweepResult& result) {
  json j;
  j["scenario"] = s.name;
  j["mode"] = s.mode_name;
  j["parameter"] = result.parameter;
  j["metric"] = result.metric;
  j["values"] = result.values;
  json runs = json::array();
  for (std::size_t i = 0; i < result.runs.size(); ++i) {
    json run;
    run["value"] = result.values[i];
    json variants = json::array();
    for (const VariantResult& v : result.runs[i].variants) variants.push_back(variant_json(v));
    run["variants"] = variants;
    runs.push_back(run);
  }
  j["runs"] = runs;
  json slopes = json::array();
  for (const SlopeFit& f : result.slopes) {
    json fit;
    fit["label"] = f.label;
    fit["slope_eps_r"] = f.eps_r ? json(*f.eps_r) : json(nullptr);
    fit["slope_eps_p"] = f.eps_p ? json(*f.eps_p) : json(nullptr);
    slopes.push_back(fit);
  }
  j["slopes"] = slopes;
  return j;
}

std::vector<std::filesystem::path> write_run(const Scenario& s, const RunResult& result,
                                             const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> files;
  for (const VariantResult& v : result.variants) {
    std::ostringstream csv;
    write_csv(csv, v, s.group);
    files.push_back(write_text(dir / (s.name + "_" + file_label(v.label) + ".csv"), csv.str()));
  }
  files.push_back(write_text(dir / (s.name + "_summary.json"), summary_json(s, result).dump(2) + "\n"));
  return files;
}

std::vector<std::filesystem::path> write_sweep(const Scenario& s, const SweepResult& result,
                                               const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::ostringstream csv;
  csv << "value,label,max_eps_r,max_eps_p,midpoint_eps_r,midpoint_eps_p\n";
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 0; i < result.runs.size(); ++i) {
    for (const VariantResult& v : result.runs[i].variants) {
      csv << format_double(result.values[i]) << ',' << v.label;
      for (double e : {v.max_error.eps_r, v.max_error.eps_p, v.midpoint_error.eps_r, v.midpoint_error.eps_p}) {
        csv << ',' << format_double(v.has_reference ? e : nan);
      }
      csv << '\n';
    }
  }
  return {write_text(dir / (s.name + "_sweep.csv"), csv.str()),
          write_text(dir / (s.name + "_sweep.json"), sweep_json(s, result).dump(2) + "\n")};
}

}  // namespace liespline::cli
