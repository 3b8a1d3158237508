#pragma once

#include <Eigen/Core>
#include <vector>

#include "liespline/group.hpp"
#include "liespline/spline.hpp"

namespace liespline {

/// Uniform, initially straight Cosserat rod in normalized arc length tau in [0, 1].
/// Stiffness and loads are scaled by the length, so positions come out in units of L.
struct RodModel {
  double length = 1.0;
  double youngs_modulus = 0.0;
  double shear_modulus = 0.0;
  double width = 0.0;   ///< cross-section extent along the frame y axis
  double height = 0.0;  ///< cross-section extent along the frame z axis
  /// diag(GJ, EI_yy, EI_zz, EA, GA, GA) / L.
  Eigen::Matrix<double, 6, 1> stiffness = Eigen::Matrix<double, 6, 1>::Ones();
  AlgebraVector reference_strain = AlgebraVector::se3(Eigen::Vector3d::Zero(), Eigen::Vector3d::UnitX());
  /// Constant distributed wrench [moment; force].
  AlgebraVector distributed_load = AlgebraVector::zero(GroupTag::SE3);

  /// Solid rectangular section. The torsion constant uses the thin-strip series
  /// J = a b^3 (1/3 - 0.21 (b/a)(1 - b^4 / (12 a^4))), a >= b.
  static RodModel rectangular(double length, double youngs_modulus, double shear_modulus, double width,
                              double height);

  /// Strain at an end carrying the concentrated wrench w = [M; F]: v = v_ref - K^-1 w.
  AlgebraVector strain_from_end_wrench(const AlgebraVector& wrench) const;
  /// Stress K (v - v_ref).
  AlgebraVector stress(const AlgebraVector& strain) const;
  AlgebraVector apply_compliance(const AlgebraVector& wrench) const;
};

/// v' = K^-1 (ad_v^T K (v - v_ref) + W). Uniform rod, straight reference.
AlgebraVector strain_ode_rhs(const RodModel& model, const AlgebraVector& v, double tau);

/// [v, v', v''] of the strain field at a point with strain v; count <= 3.
Jet strain_jet(const RodModel& model, const AlgebraVector& v, int count);

/// Classical RK4 on the strain ODE alone, from tau_from to tau_to (either direction).
AlgebraVector integrate_strain(const RodModel& model, const AlgebraVector& v_start, double tau_from,
                               double tau_to, int steps);

/// Strain at tau = 0 of the equilibrium whose terminal end carries `terminal_wrench`.
AlgebraVector start_strain_for_terminal_wrench(const RodModel& model, const AlgebraVector& terminal_wrench,
                                               int steps = 2000);

enum class DexpInverseMode {
  Truncated,  ///< v + [theta, v]/2 + [theta, [theta, v]]/12
  Exact,      ///< closed-form dexp^-1
};

/// Reference shape sampled at steps + 1 equidistant stations on [0, span].
struct RodCurve {
  std::vector<double> taus;
  std::vector<GroupElement> poses;
  std::vector<AlgebraVector> strains;
  /// log(g0^-1 g(tau)), continued across samples.
  std::vector<AlgebraVector> xi;
};

/// Munthe-Kaas RK4 on (g, v) starting at g(0) = identity, v(0) = v_init.
RodCurve integrate_reference(const RodModel& model, const AlgebraVector& v_init, int steps = 2000,
                             double span = 1.0, DexpInverseMode mode = DexpInverseMode::Truncated);

/// v_i = K^-1 Ad_{h_i}^T K (v0 - v_ref) + v_ref. Exact for W = 0.
std::vector<AlgebraVector> sample_equilibrium_strains(const RodModel& model, const AlgebraVector& v0,
                                                      const std::vector<GroupElement>& knot_poses);

struct PoseError {
  double eps_r = 0.0;
  double eps_p = 0.0;
  double max() const { return eps_r > eps_p ? eps_r : eps_p; }
};

/// Norms of the rotational and translational parts of log(exp(-xi_ref) exp(xi_cand)).
PoseError pose_error(const AlgebraVector& reference_xi, const AlgebraVector& candidate_xi);
/// Same for poses: log(reference^-1 candidate).
PoseError pose_error(const GroupElement& reference, const GroupElement& candidate);

/// Midpoint error of the two-point boundary interpolant of order 3 or 4 over [0, T]:
/// order 3 uses v(0) and v(T); order 4 adds v'(0).
PoseError two_point_midpoint_error(const RodModel& model, const AlgebraVector& v0, double segment_length, int order,
                                   int steps = 2000);

/// Knot data from a reference curve: `knots` equidistant stations (curve sample count - 1 must be
/// divisible by knots - 1), closed-form knot strains and the analytic initial strain jet.
KnotData rod_knot_data(const RodModel& model, const RodCurve& curve, int knots);

/// Componentwise maxima of the spline's pose error over every curve station.
PoseError max_spline_error(const Spline& spline, const RodCurve& curve);

}  // namespace liespline
