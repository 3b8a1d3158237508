#include "liespline/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "liespline/error.hpp"
#include "liespline/lie.hpp"
#include "liespline/spline.hpp"

namespace liespline::cli {
namespace {

using nlohmann::json;

std::string index_path(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }
std::string member_path(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

/// Reads fields of one JSON object and rejects keys it does not know.
class Reader {
 public:
  Reader(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) throw ScenarioError(path_.empty() ? "<root>" : path_, "expected an object");
  }
  /// Rejects keys that were never read.
  void finish() const {
    for (const auto& [key, value] : node_.items()) {
      if (!seen_.count(key)) throw ScenarioError(member_path(path_, key), "unknown field");
    }
  }

  bool has(const std::string& key) const { return node_.contains(key); }
  std::string path(const std::string& key) const { return member_path(path_, key); }

  const json& get(const std::string& key) {
    seen_.insert(key);
    if (!node_.contains(key)) throw ScenarioError(path(key), "required field missing");
    return node_.at(key);
  }
  const json* find(const std::string& key) {
    seen_.insert(key);
    return node_.contains(key) ? &node_.at(key) : nullptr;
  }

  std::string string(const std::string& key) { return as_string(get(key), path(key)); }
  std::string string_or(const std::string& key, const std::string& fallback) {
    const json* v = find(key);
    return v ? as_string(*v, path(key)) : fallback;
  }
  double number(const std::string& key) { return as_number(get(key), path(key)); }
  double number_or(const std::string& key, double fallback) {
    const json* v = find(key);
    return v ? as_number(*v, path(key)) : fallback;
  }
  int integer_or(const std::string& key, int fallback, int min_value) {
    const json* v = find(key);
    if (!v) return fallback;
    if (!v->is_number_integer()) throw ScenarioError(path(key), "expected an integer");
    const auto value = v->get<long long>();
    if (value < min_value || value > 100000000) {
      throw ScenarioError(path(key), "must be in [" + std::to_string(min_value) + ", 1e8]");
    }
    return static_cast<int>(value);
  }

  static std::string as_string(const json& v, const std::string& path) {
    if (!v.is_string()) throw ScenarioError(path, "expected a string");
    return v.get<std::string>();
  }
  static double as_number(const json& v, const std::string& path) {
    if (!v.is_number()) throw ScenarioError(path, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ScenarioError(path, "not finite");
    return d;
  }
  static Vec as_vector(const json& v, const std::string& path, std::optional<std::size_t> size = std::nullopt) {
    if (!v.is_array()) throw ScenarioError(path, "expected an array of numbers");
    if (size && v.size() != *size) {
      throw ScenarioError(path, "expected " + std::to_string(*size) + " entries, got " + std::to_string(v.size()));
    }
    Vec out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_number(v[i], index_path(path, i)));
    return out;
  }
  static std::vector<Vec> as_vectors(const json& v, const std::string& path, std::size_t size) {
    if (!v.is_array()) throw ScenarioError(path, "expected an array of vectors");
    std::vector<Vec> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_vector(v[i], index_path(path, i), size));
    return out;
  }

 private:
  const json& node_;
  std::string path_;
  std::set<std::string> seen_;
};

std::size_t dim_of(GroupTag g) { return static_cast<std::size_t>(algebra_dim(g)); }

PoseSpec parse_pose(const json& node, const std::string& path, GroupTag group) {
  Reader r(node, path);
  PoseSpec p;
  const std::string enc = r.string("encoding");
  if (enc == "matrix") {
    p.encoding = PoseSpec::Encoding::Matrix;
    const json& rot = r.get("R");
    const std::string rpath = r.path("R");
    if (!rot.is_array() || rot.size() != 3) throw ScenarioError(rpath, "expected 3 rows");
    for (int i = 0; i < 3; ++i) {
      const Vec row = Reader::as_vector(rot[i], index_path(rpath, i), 3);
      for (int j = 0; j < 3; ++j) p.rotation[3 * i + j] = row[j];
    }
    if (group != GroupTag::SO3) {
      const Vec t = Reader::as_vector(r.get("r"), r.path("r"), 3);
      std::copy(t.begin(), t.end(), p.translation.begin());
    }
  } else if (enc == "expcoords") {
    p.encoding = PoseSpec::Encoding::ExpCoords;
    p.coords = Reader::as_vector(r.get("xi"), r.path("xi"), dim_of(group));
  } else {
    throw ScenarioError(r.path("encoding"), "expected 'matrix' or 'expcoords', got '" + enc + "'");
  }
  r.finish();
  try {
    p.to_element(group);
  } catch (const Error& e) {
    throw ScenarioError(path, e.what());
  }
  return p;
}

json pose_json(const PoseSpec& p, GroupTag group) {
  json out;
  if (p.encoding == PoseSpec::Encoding::Matrix) {
    out["encoding"] = "matrix";
    json rows = json::array();
    for (int i = 0; i < 3; ++i) rows.push_back({p.rotation[3 * i], p.rotation[3 * i + 1], p.rotation[3 * i + 2]});
    out["R"] = rows;
    if (group != GroupTag::SO3) out["r"] = p.translation;
  } else {
    out["encoding"] = "expcoords";
    out["xi"] = p.coords;
  }
  return out;
}

void require_increasing(const Vec& times, const std::string& path) {
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) {
      throw ScenarioError(index_path(path, i), "not greater than " + index_path(path, i - 1) + " (" +
                                                   std::to_string(times[i]) + " <= " +
                                                   std::to_string(times[i - 1]) + ")");
    }
  }
}

bool is_spline_mode(const std::string& name) {
  try {
    algorithm_from_string(name);
    return true;
  } catch (const Error&) {
    return false;
  }
}

void validate_mode_name(const std::string& name, const std::string& path) {
  static const std::set<std::string> other{"two-point-iv", "two-point-bv", "bezier", "rod-reference"};
  if (!other.count(name) && !is_spline_mode(name)) throw ScenarioError(path, "unknown mode '" + name + "'");
}

void validate(const Scenario& s) {
  const Mode mode = s.mode();
  const int sources = !!s.knots + !!s.motion + !!s.random + !!s.rod;
  if (sources != 1) {
    throw ScenarioError("knots", "exactly one of knots, motion, random, rod must be given (found " +
                                     std::to_string(sources) + ")");
  }
  if (s.rod && s.group != GroupTag::SE3) throw ScenarioError("group", "rod scenarios live on SE3");
  if (mode == Mode::RodReference && !s.rod) throw ScenarioError("rod", "rod-reference needs a rod");
  if (mode == Mode::Bezier && !s.knots) throw ScenarioError("knots", "bezier needs explicit control poses");
  if (mode == Mode::Bezier && s.knots->poses.empty()) throw ScenarioError("knots.poses", "no control poses");
  if (s.random && mode != Mode::Spline) throw ScenarioError("random", "random knots only feed spline modes");
  for (std::size_t i = 0; i < s.compare.size(); ++i) {
    if (!is_spline_mode(s.compare[i]) || mode != Mode::Spline) {
      throw ScenarioError(index_path("compare", i), "only spline modes can be compared, with a spline mode");
    }
  }
  const bool two_point = mode == Mode::TwoPointIv || mode == Mode::TwoPointBv;
  for (std::size_t i = 0; i < s.orders.size(); ++i) {
    const int k = s.orders[i];
    const int lo = mode == Mode::TwoPointBv ? 3 : 2;
    if (!two_point || k < lo || k > lo + 2) {
      throw ScenarioError(index_path("orders", i), "unsupported order " + std::to_string(k) + " for " + s.mode_name);
    }
  }
  if (s.base && !(mode == Mode::Spline && is_global(algorithm_from_string(s.mode_name)))) {
    throw ScenarioError("base", "a chart base is only used by global spline modes");
  }
  if (s.knots) {
    const KnotSpec& k = *s.knots;
    if (mode != Mode::Bezier) {
      if (k.times.size() != k.poses.size()) {
        throw ScenarioError("knots.poses", std::to_string(k.poses.size()) + " poses for " +
                                               std::to_string(k.times.size()) + " times");
      }
      if (k.times.size() < 2) throw ScenarioError("knots.times", "at least two knots are needed");
      if (two_point && k.times.size() != 2) throw ScenarioError("knots.times", "two-point modes take exactly 2 knots");
      if (!k.velocities.empty() && k.velocities.size() != k.times.size()) {
        throw ScenarioError("knots.velocities", "one velocity per knot expected");
      }
    }
  }
  if (s.motion) {
    if (s.motion->coefficients.empty()) throw ScenarioError("motion.coefficients", "empty polynomial");
    if (s.motion->knot_times.size() < 2) throw ScenarioError("motion.knot_times", "at least two knots are needed");
    if (two_point && s.motion->knot_times.size() != 2) {
      throw ScenarioError("motion.knot_times", "two-point modes take exactly 2 knots");
    }
  }
  if (s.rod) {
    const RodSpec& r = *s.rod;
    if (!!r.start_wrench == !!r.terminal_wrench) {
      throw ScenarioError("rod", "give exactly one of start_wrench, terminal_wrench");
    }
    if (!(r.segment_length > 0 && r.segment_length <= 1)) throw ScenarioError("rod.segment_length", "must be in (0, 1]");
  }
  if (s.sweep) {
    static const std::set<std::string> params{"segment_length", "knots", "samples", "steps"};
    if (!params.count(s.sweep->parameter)) {
      throw ScenarioError("sweep.parameter", "unknown sweep parameter '" + s.sweep->parameter + "'");
    }
    if (s.sweep->values.empty()) throw ScenarioError("sweep.values", "no values");
    if (s.sweep->metric != "max" && s.sweep->metric != "midpoint") {
      throw ScenarioError("sweep.metric", "expected 'max' or 'midpoint'");
    }
    if (s.sweep->parameter == "segment_length" && !s.rod) {
      throw ScenarioError("sweep.parameter", "segment_length sweeps need a rod");
    }
  }
  if (s.output.samples < 2) throw ScenarioError("output.samples", "at least two samples");
}

}  // namespace

GroupElement PoseSpec::to_element(GroupTag group) const {
  if (encoding == Encoding::ExpCoords) {
    Coords c(algebra_dim(group));
    for (int i = 0; i < c.size(); ++i) c[i] = coords.at(i);
    return exp(AlgebraVector(group, c));
  }
  const Eigen::Matrix3d R = Eigen::Map<const Eigen::Matrix<double, 3, 3, Eigen::RowMajor>>(rotation.data());
  return GroupElement::from_parts(group, R, Eigen::Vector3d(translation[0], translation[1], translation[2]), 1e-4);
}

Mode Scenario::mode() const {
  if (mode_name == "two-point-iv") return Mode::TwoPointIv;
  if (mode_name == "two-point-bv") return Mode::TwoPointBv;
  if (mode_name == "bezier") return Mode::Bezier;
  if (mode_name == "rod-reference") return Mode::RodReference;
  return Mode::Spline;
}

Scenario parse_scenario(const json& doc) {
  Reader r(doc, "");
  Scenario s;
  s.name = r.string("name");
  if (s.name.empty() || s.name.find_first_of("/\\ ") != std::string::npos) {
    throw ScenarioError("name", "must be non-empty without spaces or slashes");
  }
  s.description = r.string_or("description", "");
  s.reproduces = r.string_or("reproduces", "");
  try {
    s.group = group_from_string(r.string("group"));
  } catch (const Error& e) {
    throw ScenarioError("group", e.message());
  }
  const std::size_t dim = dim_of(s.group);
  s.mode_name = r.string("mode");
  validate_mode_name(s.mode_name, "mode");
  if (const json* c = r.find("compare")) {
    if (!c->is_array()) throw ScenarioError("compare", "expected an array of mode names");
    for (std::size_t i = 0; i < c->size(); ++i) s.compare.push_back(Reader::as_string((*c)[i], index_path("compare", i)));
  }
  if (const json* o = r.find("orders")) {
    const Vec v = Reader::as_vector(*o, "orders");
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] != std::floor(v[i])) throw ScenarioError(index_path("orders", i), "expected an integer");
      s.orders.push_back(static_cast<int>(v[i]));
    }
  }
  if (const json* k = r.find("knots")) {
    Reader kr(*k, "knots");
    KnotSpec spec;
    if (const json* t = kr.find("times")) spec.times = Reader::as_vector(*t, "knots.times");
    const json& poses = kr.get("poses");
    if (!poses.is_array()) throw ScenarioError("knots.poses", "expected an array of poses");
    for (std::size_t i = 0; i < poses.size(); ++i) {
      spec.poses.push_back(parse_pose(poses[i], index_path("knots.poses", i), s.group));
    }
    if (const json* v = kr.find("velocities")) spec.velocities = Reader::as_vectors(*v, "knots.velocities", dim);
    if (const json* j = kr.find("initial_jet")) spec.initial_jet = Reader::as_vectors(*j, "knots.initial_jet", dim);
    if (spec.initial_jet.size() > 3) throw ScenarioError("knots.initial_jet", "at most 3 entries");
    kr.finish();
    require_increasing(spec.times, "knots.times");
    s.knots = std::move(spec);
  }
  if (const json* m = r.find("motion")) {
    Reader mr(*m, "motion");
    MotionSpec spec;
    if (const json* b = mr.find("base")) spec.base = parse_pose(*b, "motion.base", s.group);
    spec.coefficients = Reader::as_vectors(mr.get("coefficients"), "motion.coefficients", dim);
    spec.knot_times = Reader::as_vector(mr.get("knot_times"), "motion.knot_times");
    mr.finish();
    require_increasing(spec.knot_times, "motion.knot_times");
    s.motion = std::move(spec);
  }
  if (const json* q = r.find("random")) {
    Reader qr(*q, "random");
    RandomSpec spec;
    spec.count = qr.integer_or("count", spec.count, 2);
    spec.seed = static_cast<std::uint64_t>(qr.integer_or("seed", static_cast<int>(spec.seed), 0));
    spec.max_rot = qr.number_or("max_rot", spec.max_rot);
    spec.max_trans = qr.number_or("max_trans", spec.max_trans);
    if (!(spec.max_rot > 0 && spec.max_rot < 3)) throw ScenarioError("random.max_rot", "must be in (0, 3)");
    qr.finish();
    s.random = spec;
  }
  if (const json* rod = r.find("rod")) {
    Reader rr(*rod, "rod");
    RodSpec spec;
    spec.length = rr.number("length");
    spec.youngs_modulus = rr.number("youngs_modulus");
    spec.shear_modulus = rr.number("shear_modulus");
    spec.width = rr.number("width");
    spec.height = rr.number("height");
    for (const char* key : {"length", "youngs_modulus", "shear_modulus", "width", "height"}) {
      if (!(rr.number_or(key, 0) > 0)) throw ScenarioError(rr.path(key), "must be positive");
    }
    if (const json* w = rr.find("start_wrench")) spec.start_wrench = Reader::as_vector(*w, "rod.start_wrench", 6);
    if (const json* w = rr.find("terminal_wrench")) {
      spec.terminal_wrench = Reader::as_vector(*w, "rod.terminal_wrench", 6);
    }
    spec.steps = rr.integer_or("steps", spec.steps, 2);
    spec.knots = rr.integer_or("knots", spec.knots, 2);
    spec.segment_length = rr.number_or("segment_length", spec.segment_length);
    rr.finish();
    s.rod = std::move(spec);
  }
  if (const json* b = r.find("base")) s.base = parse_pose(*b, "base", s.group);
  if (const json* w = r.find("sweep")) {
    Reader wr(*w, "sweep");
    SweepSpec spec;
    spec.parameter = wr.string("parameter");
    spec.values = Reader::as_vector(wr.get("values"), "sweep.values");
    spec.metric = wr.string_or("metric", spec.metric);
    wr.finish();
    s.sweep = std::move(spec);
  }
  if (const json* o = r.find("output")) {
    Reader orr(*o, "output");
    s.output.samples = orr.integer_or("samples", s.output.samples, 2);
    s.output.dir = orr.string_or("dir", "");
    orr.finish();
  }
  r.finish();
  validate(s);
  return s;
}

Scenario load_scenario(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ScenarioError("<file>", "cannot open '" + file.string() + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ScenarioError("<file>", std::string("invalid JSON in '") + file.string() + "': " + e.what());
  }
  return parse_scenario(doc);
}

json to_json(const Scenario& s) {
  json out;
  out["name"] = s.name;
  if (!s.description.empty()) out["description"] = s.description;
  if (!s.reproduces.empty()) out["reproduces"] = s.reproduces;
  out["group"] = std::string(to_string(s.group));
  out["mode"] = s.mode_name;
  if (!s.compare.empty()) out["compare"] = s.compare;
  if (!s.orders.empty()) out["orders"] = s.orders;
  if (s.knots) {
    json k;
    if (!s.knots->times.empty()) k["times"] = s.knots->times;
    json poses = json::array();
    for (const PoseSpec& p : s.knots->poses) poses.push_back(pose_json(p, s.group));
    k["poses"] = poses;
    if (!s.knots->velocities.empty()) k["velocities"] = s.knots->velocities;
    if (!s.knots->initial_jet.empty()) k["initial_jet"] = s.knots->initial_jet;
    out["knots"] = k;
  }
  if (s.motion) {
    out["motion"] = {{"base", pose_json(s.motion->base, s.group)},
                     {"coefficients", s.motion->coefficients},
                     {"knot_times", s.motion->knot_times}};
  }
  if (s.random) {
    out["random"] = {{"count", s.random->count},
                     {"seed", s.random->seed},
                     {"max_rot", s.random->max_rot},
                     {"max_trans", s.random->max_trans}};
  }
  if (s.rod) {
    const RodSpec& r = *s.rod;
    json j = {{"length", r.length},         {"youngs_modulus", r.youngs_modulus},
              {"shear_modulus", r.shear_modulus}, {"width", r.width},
              {"height", r.height},         {"steps", r.steps},
              {"knots", r.knots},           {"segment_length", r.segment_length}};
    if (r.start_wrench) j["start_wrench"] = *r.start_wrench;
    if (r.terminal_wrench) j["terminal_wrench"] = *r.terminal_wrench;
    out["rod"] = j;
  }
  if (s.base) out["base"] = pose_json(*s.base, s.group);
  if (s.sweep) {
    out["sweep"] = {{"parameter", s.sweep->parameter}, {"values", s.sweep->values}, {"metric", s.sweep->metric}};
  }
  out["output"] = {{"samples", s.output.samples}};
  if (!s.output.dir.empty()) out["output"]["dir"] = s.output.dir;
  return out;
}

}  // namespace liespline::cli
