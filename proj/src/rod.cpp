#include "liespline/rod.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "liespline/error.hpp"
#include "liespline/lie.hpp"
#include "liespline/two_point.hpp"

namespace liespline {
namespace {

Coords diag_mul(const Eigen::Matrix<double, 6, 1>& d, const Coords& x) { return d.cwiseProduct(x); }

AlgebraVector se3_vector(const Coords& c) { return AlgebraVector(GroupTag::SE3, c); }

void require_se3(const AlgebraVector& v, const char* what) { require_same_group(GroupTag::SE3, v.group(), what); }

AlgebraVector local_rhs(const AlgebraVector& theta, const AlgebraVector& v, DexpInverseMode mode) {
  if (mode == DexpInverseMode::Exact) return dexp_inv(-theta) * v;
  const AlgebraVector tv = bracket(theta, v);
  return v + 0.5 * tv + (1.0 / 12.0) * bracket(theta, tv);
}

/// Strain ODE in the deviation u = v - v_ref. Carrying u instead of v avoids the
/// cancellation in v_axial - 1, which the axial stiffness would amplify ~1e5-fold.
Coords deviation_rhs(const RodModel& m, const Coords& u) {
  const AlgebraVector v = m.reference_strain + AlgebraVector(GroupTag::SE3, u);
  const Coords dual = ad_matrix(v).transpose() * m.stiffness.cwiseProduct(u) + m.distributed_load.coords();
  return dual.cwiseQuotient(m.stiffness);
}

}  // namespace

RodModel RodModel::rectangular(double length, double youngs_modulus, double shear_modulus, double width,
                               double height) {
  if (!(length > 0 && youngs_modulus > 0 && shear_modulus > 0 && width > 0 && height > 0)) {
    throw Error(ErrorCode::InvalidArgument, "rod length, moduli and section dimensions must be positive");
  }
  RodModel m;
  m.length = length;
  m.youngs_modulus = youngs_modulus;
  m.shear_modulus = shear_modulus;
  m.width = width;
  m.height = height;
  const double area = width * height;
  const double i_yy = width * height * height * height / 12.0;
  const double i_zz = height * width * width * width / 12.0;
  const double a = std::max(width, height), b = std::min(width, height);
  const double torsion = a * b * b * b * (1.0 / 3.0 - 0.21 * (b / a) * (1.0 - std::pow(b / a, 4) / 12.0));
  m.stiffness << shear_modulus * torsion, youngs_modulus * i_yy, youngs_modulus * i_zz, youngs_modulus * area,
      shear_modulus * area, shear_modulus * area;
  m.stiffness /= length;
  return m;
}

AlgebraVector RodModel::apply_compliance(const AlgebraVector& wrench) const {
  require_se3(wrench, "rod wrench");
  return se3_vector(wrench.coords().cwiseQuotient(stiffness));
}

AlgebraVector RodModel::strain_from_end_wrench(const AlgebraVector& wrench) const {
  return reference_strain - apply_compliance(wrench);
}

AlgebraVector RodModel::stress(const AlgebraVector& strain) const {
  require_se3(strain, "rod strain");
  return se3_vector(diag_mul(stiffness, (strain - reference_strain).coords()));
}

AlgebraVector strain_ode_rhs(const RodModel& model, const AlgebraVector& v, double /*tau*/) {
  require_se3(v, "rod strain");
  return se3_vector(deviation_rhs(model, (v - model.reference_strain).coords()));
}

Jet strain_jet(const RodModel& model, const AlgebraVector& v, int count) {
  if (count < 1 || count > 3) throw Error(ErrorCode::InvalidArgument, "strain jet holds 1 to 3 entries");
  Jet jet{v};
  if (count == 1) return jet;
  const AlgebraVector v1 = strain_ode_rhs(model, v, 0.0);
  jet.push_back(v1);
  if (count == 2) return jet;
  // d/dtau of K^-1 ad_v^T K (v - v_ref) with constant K and W.
  const Coords stress = model.stress(v).coords();
  const Coords d_stress = diag_mul(model.stiffness, v1.coords());
  const Coords dual = ad_matrix(v1).transpose() * stress + ad_matrix(v).transpose() * d_stress;
  jet.push_back(model.apply_compliance(se3_vector(dual)));
  return jet;
}

AlgebraVector integrate_strain(const RodModel& model, const AlgebraVector& v_start, double tau_from, double tau_to,
                               int steps) {
  if (steps < 1) throw Error(ErrorCode::InvalidArgument, "strain integration needs at least one step");
  require_se3(v_start, "rod strain");
  const double h = (tau_to - tau_from) / steps;
  Coords u = (v_start - model.reference_strain).coords();
  for (int n = 0; n < steps; ++n) {
    const Coords k1 = deviation_rhs(model, u);
    const Coords k2 = deviation_rhs(model, u + 0.5 * h * k1);
    const Coords k3 = deviation_rhs(model, u + 0.5 * h * k2);
    const Coords k4 = deviation_rhs(model, u + h * k3);
    u += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return model.reference_strain + se3_vector(u);
}

AlgebraVector start_strain_for_terminal_wrench(const RodModel& model, const AlgebraVector& terminal_wrench,
                                               int steps) {
  return integrate_strain(model, model.strain_from_end_wrench(terminal_wrench), 1.0, 0.0, steps);
}

RodCurve integrate_reference(const RodModel& model, const AlgebraVector& v_init, int steps, double span,
                             DexpInverseMode mode) {
  if (steps < 1) throw Error(ErrorCode::InvalidArgument, "reference integration needs at least one step");
  if (!(span > 0) || !std::isfinite(span)) throw Error(ErrorCode::InvalidArgument, "integration span must be positive");
  require_se3(v_init, "initial rod strain");
  const double h = span / steps;
  RodCurve out;
  out.taus.reserve(steps + 1);
  out.poses.reserve(steps + 1);
  out.strains.reserve(steps + 1);
  out.xi.reserve(steps + 1);
  GroupElement g = GroupElement::identity(GroupTag::SE3);
  const AlgebraVector& v_ref = model.reference_strain;
  Coords u = (v_init - v_ref).coords();
  out.taus.push_back(0.0);
  out.poses.push_back(g);
  out.strains.push_back(v_init);
  out.xi.push_back(AlgebraVector::zero(GroupTag::SE3));
  auto strain = [&](const Coords& dev) { return v_ref + se3_vector(dev); };
  for (int n = 0; n < steps; ++n) {
    // Stage k: local coordinates theta_k and strain deviation u_k; increments scaled by h.
    const Coords u1 = u;
    const AlgebraVector t1 = h * strain(u1);
    const Coords f1 = h * deviation_rhs(model, u1);
    const Coords u2 = u + 0.5 * f1;
    const AlgebraVector t2 = h * local_rhs(0.5 * t1, strain(u2), mode);
    const Coords f2 = h * deviation_rhs(model, u2);
    const Coords u3 = u + 0.5 * f2;
    const AlgebraVector t3 = h * local_rhs(0.5 * t2, strain(u3), mode);
    const Coords f3 = h * deviation_rhs(model, u3);
    const Coords u4 = u + f3;
    const AlgebraVector t4 = h * local_rhs(t3, strain(u4), mode);
    const Coords f4 = h * deviation_rhs(model, u4);
    g = g * exp((1.0 / 6.0) * (t1 + 2.0 * t2 + 2.0 * t3 + t4));
    u += (f1 + 2.0 * f2 + 2.0 * f3 + f4) / 6.0;
    out.taus.push_back(n + 1 == steps ? span : (n + 1) * h);
    out.poses.push_back(g);
    out.strains.push_back(strain(u));
    try {
      out.xi.push_back(log_near(g, out.xi.back()));
    } catch (const Error& e) {
      throw e.with_context("reference coordinates at tau = " + std::to_string(out.taus.back()));
    }
  }
  return out;
}

std::vector<AlgebraVector> sample_equilibrium_strains(const RodModel& model, const AlgebraVector& v0,
                                                      const std::vector<GroupElement>& knot_poses) {
  const AlgebraVector stress0 = model.stress(v0);
  std::vector<AlgebraVector> out;
  out.reserve(knot_poses.size());
  for (const GroupElement& h : knot_poses) {
    require_same_group(GroupTag::SE3, h.group(), "rod knot pose");
    const Coords transported = Ad_matrix(h).transpose() * stress0.coords();
    out.push_back(model.apply_compliance(se3_vector(transported)) + model.reference_strain);
  }
  return out;
}

PoseError pose_error(const GroupElement& reference, const GroupElement& candidate) {
  const AlgebraVector eps = log(reference.inverse() * candidate);
  return {eps.rot().norm(), eps.trans().norm()};
}

PoseError pose_error(const AlgebraVector& reference_xi, const AlgebraVector& candidate_xi) {
  return pose_error(exp(reference_xi), exp(candidate_xi));
}

PoseError two_point_midpoint_error(const RodModel& model, const AlgebraVector& v0, double segment_length, int order,
                                   int steps) {
  if (order != 3 && order != 4) throw Error(ErrorCode::InvalidArgument, "rod two-point order must be 3 or 4");
  if (steps % 2 != 0) ++steps;
  const RodCurve curve = integrate_reference(model, v0, steps, segment_length);
  const double T = segment_length;
  // The continued reference coordinates, not the principal log: the rod may twist past pi.
  const AlgebraVector zero = AlgebraVector::zero(GroupTag::SE3);
  const Jet jet = strain_jet(model, v0, order - 1);
  Jet jet0{T * jet[0]};
  if (order == 4) jet0.push_back(T * T * jet[1]);
  const CoordinatePolynomial xi = boundary_value_polynomial(zero, curve.xi.back(), jet0, T * curve.strains.back(), order);
  return pose_error(curve.poses[steps / 2], exp(xi.eval(0.5)));
}

KnotData rod_knot_data(const RodModel& model, const RodCurve& curve, int knots) {
  const std::size_t stations = curve.poses.size();
  if (knots < 2 || stations < 2 || (stations - 1) % (knots - 1) != 0) {
    throw Error(ErrorCode::InvalidArgument, std::to_string(knots) + " knots do not fall on the " +
                                                std::to_string(stations) + " reference stations");
  }
  const std::size_t stride = (stations - 1) / (knots - 1);
  KnotData data;
  for (int i = 0; i < knots; ++i) {
    data.times.push_back(curve.taus[i * stride]);
    data.poses.push_back(curve.poses[i * stride]);
  }
  data.velocities = sample_equilibrium_strains(model, curve.strains.front(), data.poses);
  data.initial_jet = strain_jet(model, curve.strains.front(), 3);
  return data;
}

PoseError max_spline_error(const Spline& spline, const RodCurve& curve) {
  PoseError worst;
  for (std::size_t i = 0; i < curve.taus.size(); ++i) {
    const PoseError e = pose_error(curve.poses[i], spline.pose(curve.taus[i]));
    worst.eps_r = std::max(worst.eps_r, e.eps_r);
    worst.eps_p = std::max(worst.eps_p, e.eps_p);
  }
  return worst;
}

}  // namespace liespline
