#include <gtest/gtest.h>

#include <cmath>

#include "liespline/error.hpp"
#include "liespline/lie.hpp"
#include "liespline/rod.hpp"
#include "oracles.hpp"

using namespace liespline;

namespace {

RodModel rubber_square() { return RodModel::rectangular(0.1, 10e6, 0.3e6, 8e-3, 8e-3); }
RodModel rubber_flat() { return RodModel::rectangular(0.1, 10e6, 0.3e6, 4e-3, 12e-3); }

AlgebraVector wrench(const Eigen::Vector3d& moment, const Eigen::Vector3d& force) {
  return AlgebraVector::se3(moment, force);
}

AlgebraVector square_start_wrench() {
  return wrench({0, -0.0293, -0.1277}, {0.0977, 0.0665, -0.1950});
}

AlgebraVector square_terminal_wrench() { return wrench({0, -0.008, -0.012}, {0, 0.12, -0.08}); }

/// Stress-form RK4: Lambda' = ad_v^T Lambda + W, v = K^-1 Lambda + v_ref.
AlgebraVector integrate_stress_form(const RodModel& m, const AlgebraVector& v0, int steps) {
  auto rhs = [&](const Coords& stress) -> Coords {
    const AlgebraVector v = AlgebraVector(GroupTag::SE3, stress.cwiseQuotient(m.stiffness)) + m.reference_strain;
    return ad_matrix(v).transpose() * stress + m.distributed_load.coords();
  };
  Coords s = m.stress(v0).coords();
  const double h = 1.0 / steps;
  for (int n = 0; n < steps; ++n) {
    const Coords k1 = rhs(s), k2 = rhs(s + 0.5 * h * k1), k3 = rhs(s + 0.5 * h * k2), k4 = rhs(s + h * k3);
    s += h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
  }
  return AlgebraVector(GroupTag::SE3, s.cwiseQuotient(m.stiffness)) + m.reference_strain;
}

int stations_for(int knots, int at_least) { return (knots - 1) * ((at_least + knots - 2) / (knots - 1)); }

}  // namespace

TEST(RodModel, RectangularStiffness) {
  const RodModel m = rubber_square();
  const double L = 0.1, E = 10e6, G = 0.3e6, a = 8e-3;
  EXPECT_NEAR(m.stiffness[1], E * a * a * a * a / 12 / L, 1e-15);
  EXPECT_NEAR(m.stiffness[2], E * a * a * a * a / 12 / L, 1e-15);
  EXPECT_NEAR(m.stiffness[3], E * a * a / L, 1e-9);
  EXPECT_NEAR(m.stiffness[4], G * a * a / L, 1e-10);
  // Square section: exact J = 0.1406 a^4; the strip series gives 1/3 - 0.21 * 11/12 = 0.14083.
  EXPECT_NEAR(m.stiffness[0] / (G * a * a * a * a / L), 0.1406, 5e-4);
  const RodModel f = rubber_flat();
  EXPECT_GT(f.stiffness[1], f.stiffness[2]);  // bending about y resists the 12 mm extent
  EXPECT_THROW(RodModel::rectangular(0.1, 10e6, 0.3e6, 0.0, 1e-3), Error);
}

TEST(RodModel, StrainFromEndWrench) {
  const RodModel m = rubber_square();
  const AlgebraVector v0 = m.strain_from_end_wrench(square_start_wrench());
  for (int i = 0; i < 6; ++i) {
    const double expected = m.reference_strain[i] - square_start_wrench()[i] / m.stiffness[i];
    EXPECT_DOUBLE_EQ(v0[i], expected);
  }
  // v_axial = 1 - 1.5e-5 is stored to 1 ulp; K_axial = 6400 scales that to ~1e-12.
  EXPECT_LT((m.stress(v0) + square_start_wrench()).norm(), 1e-12);
}

TEST(StrainOde, VanishesAtReferenceStrain) {
  const RodModel m = rubber_square();
  EXPECT_EQ(strain_ode_rhs(m, m.reference_strain, 0.3).norm(), 0.0);
}

TEST(StrainOde, PureMomentAboutPrincipalAxisIsStationary) {
  const RodModel m = rubber_flat();
  for (int axis : {0, 1, 2}) {
    AlgebraVector v = m.reference_strain;
    v.coords()[axis] = 2.5;
    EXPECT_LT(strain_ode_rhs(m, v, 0.0).norm(), 1e-15) << "axis " << axis;
  }
}

TEST(StrainOde, AgreesWithStressForm) {
  const RodModel m = rubber_square();
  const AlgebraVector v0 = m.strain_from_end_wrench(square_start_wrench());
  const AlgebraVector strain_form = integrate_strain(m, v0, 0.0, 1.0, 500);
  const AlgebraVector stress_form = integrate_stress_form(m, v0, 500);
  EXPECT_LT((strain_form - stress_form).norm(), 1e-12 * std::max(1.0, v0.norm()));
}

TEST(StrainOde, JetMatchesFiniteDifferences) {
  const RodModel m = rubber_square();
  const AlgebraVector v0 = m.strain_from_end_wrench(square_start_wrench());
  const Jet jet = strain_jet(m, v0, 3);
  const double h = 1e-4;
  const AlgebraVector fwd = integrate_strain(m, v0, 0.0, h, 4);
  const AlgebraVector bwd = integrate_strain(m, v0, 0.0, -h, 4);
  const AlgebraVector d1 = (fwd - bwd) / (2 * h);
  const AlgebraVector d2 = (fwd - 2.0 * v0 + bwd) / (h * h);
  EXPECT_LT((d1 - jet[1]).norm(), 1e-6 * jet[1].norm());
  EXPECT_LT((d2 - jet[2]).norm(), 1e-4 * jet[2].norm());
  EXPECT_THROW(strain_jet(m, v0, 4), Error);
}

TEST(StrainOde, BackwardIntegrationRecoversTerminalStrain) {
  const RodModel m = rubber_square();
  const AlgebraVector start = start_strain_for_terminal_wrench(m, square_terminal_wrench(), 2000);
  const AlgebraVector end = integrate_strain(m, start, 0.0, 1.0, 2000);
  EXPECT_LT((end - m.strain_from_end_wrench(square_terminal_wrench())).norm(), 1e-10);
}

TEST(ReferenceIntegration, ZeroLoadIsStraight) {
  const RodModel m = rubber_square();
  const RodCurve c = integrate_reference(m, m.reference_strain, 40);
  ASSERT_EQ(c.poses.size(), 41u);
  for (std::size_t i = 0; i < c.poses.size(); ++i) {
    EXPECT_LT((c.poses[i].rotation() - Eigen::Matrix3d::Identity()).norm(), 1e-15);
    EXPECT_LT((c.poses[i].translation() - Eigen::Vector3d(c.taus[i], 0, 0)).norm(), 1e-14);
  }
}

TEST(ReferenceIntegration, ConstantCurvatureIsExactArc) {
  const RodModel m = rubber_square();
  const AlgebraVector v = AlgebraVector::se3(Eigen::Vector3d(0, 1.7, 0), Eigen::Vector3d(1, 0, 0));
  const RodCurve c = integrate_reference(m, v, 50);
  for (std::size_t i = 0; i < c.poses.size(); i += 10) {
    EXPECT_LT(c.poses[i].distance(exp(c.taus[i] * v)), 1e-13);
    EXPECT_LT((c.xi[i] - c.taus[i] * v).norm(), 1e-12);
  }
}

TEST(ReferenceIntegration, ReproducesTargetTerminalPoseFromConsistentStrain) {
  // Start strain fitted to the target terminal pose. Its stress reproduces the target start
  // wrench in components 2, 4, 5, 6 to their 4 given decimals. The pose responds to the axial
  // strain with gain ~5e4, hence the 10 digits.
  const AlgebraVector v0 = AlgebraVector::se3(Eigen::Vector3d(0.0000067841, 0.8578578988, 3.7186313232),
                                              Eigen::Vector3d(0.9999847291, -0.0003464141, 0.0010154848));
  const AlgebraVector implied = -1.0 * rubber_square().stress(v0);
  for (int i : {1, 3, 4, 5}) EXPECT_NEAR(implied[i], square_start_wrench()[i], 5e-5) << "component " << i;
  const RodCurve c = integrate_reference(rubber_square(), v0, 2000);
  Eigen::Matrix3d R1;
  R1 << -0.51519, -0.42868, -0.74217, -0.69850, -0.29163, 0.65339, -0.49653, 0.85509, -0.14923;
  const Eigen::Vector3d r1(-0.14518, 0.29880, -0.42338);
  EXPECT_LT((c.poses.back().rotation() - R1).cwiseAbs().maxCoeff(), 1e-3);
  EXPECT_LT((c.poses.back().translation() - r1).cwiseAbs().maxCoeff(), 1e-3);
  // The continued coordinates pass the principal branch here.
  EXPECT_GT(c.xi.back().rot().norm(), M_PI);
  EXPECT_LT(exp(c.xi.back()).distance(c.poses.back()), 1e-12);
}

TEST(ReferenceIntegration, FourthOrderConvergence) {
  const RodModel m = rubber_square();
  const AlgebraVector v0 = m.strain_from_end_wrench(square_start_wrench());
  std::vector<GroupElement> ends;
  for (int steps : {125, 250, 500, 1000, 2000}) ends.push_back(integrate_reference(m, v0, steps).poses.back());
  for (std::size_t i = 0; i + 2 < ends.size(); ++i) {
    const double ratio = log(ends[i].inverse() * ends[i + 1]).norm() / log(ends[i + 1].inverse() * ends[i + 2]).norm();
    EXPECT_NEAR(ratio, 16.0, 3.2) << "refinement " << i;
  }
}

TEST(ReferenceIntegration, TruncatedAndExactLocalSolveAgree) {
  const RodModel m = rubber_square();
  const AlgebraVector v0 = m.strain_from_end_wrench(square_start_wrench());
  const RodCurve a = integrate_reference(m, v0, 1000, 1.0, DexpInverseMode::Truncated);
  const RodCurve b = integrate_reference(m, v0, 1000, 1.0, DexpInverseMode::Exact);
  EXPECT_LT(a.poses.back().distance(b.poses.back()), 1e-9);
}

TEST(ReferenceIntegration, RejectsBadInput) {
  const RodModel m = rubber_square();
  EXPECT_THROW(integrate_reference(m, m.reference_strain, 0), Error);
  EXPECT_THROW(integrate_reference(m, m.reference_strain, 10, -1.0), Error);
  EXPECT_THROW(integrate_reference(m, AlgebraVector::zero(GroupTag::SO3), 10), Error);
}

TEST(EquilibriumStrains, IdentityGivesStartStrain) {
  const RodModel m = rubber_square();
  const AlgebraVector v0 = m.strain_from_end_wrench(square_start_wrench());
  const auto v = sample_equilibrium_strains(m, v0, {GroupElement::identity(GroupTag::SE3)});
  EXPECT_LT((v[0] - v0).norm(), 1e-15);
}

TEST(EquilibriumStrains, MatchReferenceIntegration) {
  const RodModel m = rubber_square();
  const AlgebraVector v0 = start_strain_for_terminal_wrench(m, square_terminal_wrench());
  const RodCurve c = integrate_reference(m, v0, 2000);
  std::vector<GroupElement> stations;
  for (int i = 0; i <= 20; ++i) stations.push_back(c.poses[100 * i]);
  const auto v = sample_equilibrium_strains(m, v0, stations);
  for (int i = 0; i <= 20; ++i) EXPECT_LT((v[i] - c.strains[100 * i]).norm(), 1e-6) << "station " << i;
}

TEST(EquilibriumStrains, TransportComposes) {
  std::mt19937_64 rng(7);
  // Well-conditioned stiffness for the algebraic identity; the rubber rod below recomputes
  // K (v_i - v_ref) on the intermediate strain, where one ulp is amplified by EA / EI ~ 2e5.
  RodModel unit = rubber_square();
  unit.stiffness << 1, 2, 3, 4, 5, 6;
  const RodModel rubber = rubber_square();
  const AlgebraVector v0 = rubber.strain_from_end_wrench(square_start_wrench());
  for (int trial = 0; trial < 10; ++trial) {
    const GroupElement hi = oracle::random_element(rng, GroupTag::SE3);
    const GroupElement hj = oracle::random_element(rng, GroupTag::SE3);
    for (const auto& [m, tol] : {std::pair{unit, 1e-12}, std::pair{rubber, 1e-9}}) {
      const AlgebraVector vi = sample_equilibrium_strains(m, v0, {hi})[0];
      const AlgebraVector via = sample_equilibrium_strains(m, vi, {hi.inverse() * hj})[0];
      const AlgebraVector direct = sample_equilibrium_strains(m, v0, {hj})[0];
      EXPECT_LT((via - direct).norm(), tol * std::max(1.0, direct.norm())) << "trial " << trial;
    }
  }
}

TEST(PoseError, Basics) {
  std::mt19937_64 rng(8);
  const GroupElement g = oracle::random_element(rng, GroupTag::SE3);
  const PoseError same = pose_error(g, g);
  EXPECT_LT(same.eps_r, 1e-15);
  EXPECT_LT(same.eps_p, 1e-15);
  const Eigen::Vector3d d(0.3, -0.4, 1.2);
  const GroupElement shifted = g * GroupElement::from_parts(GroupTag::SE3, Eigen::Matrix3d::Identity(), d);
  const PoseError e = pose_error(g, shifted);
  EXPECT_LT(e.eps_r, 1e-15);
  EXPECT_NEAR(e.eps_p, d.norm(), 1e-14);
  const AlgebraVector xi = oracle::random_algebra(rng, GroupTag::SE3, 1.0);
  EXPECT_NEAR(pose_error(xi, xi + AlgebraVector::se3(Eigen::Vector3d::Zero(), d)).eps_r, 0.0, 1e-15);
}

TEST(RodTwoPoint, ErrorShrinksWithSegmentAndOrder) {
  const RodModel m = rubber_square();
  const AlgebraVector v0 = m.strain_from_end_wrench(square_start_wrench());
  for (int order : {3, 4}) {
    double previous = 1e300;
    for (double T : {1.0, 0.5, 0.25, 0.1, 0.05}) {
      const PoseError e = two_point_midpoint_error(m, v0, T, order);
      EXPECT_LT(e.max(), previous) << "order " << order << " T " << T;
      previous = e.max();
    }
  }
  EXPECT_LT(two_point_midpoint_error(m, v0, 0.1, 4).max(), two_point_midpoint_error(m, v0, 0.1, 3).max());
  EXPECT_THROW(two_point_midpoint_error(m, v0, 0.5, 5), Error);
}

TEST(RodSpline, ConstantCurvatureRecoveredByEveryFamily) {
  const RodModel m = rubber_square();
  AlgebraVector v = m.reference_strain;
  v.coords()[2] = 3.0;  // pure moment about z
  const RodCurve c = integrate_reference(m, v, 400);
  const KnotData data = rod_knot_data(m, c, 5);
  for (SplineAlgorithm alg : {SplineAlgorithm::PoeOrder3, SplineAlgorithm::PoeOrder4, SplineAlgorithm::PoeOrder3Vel,
                              SplineAlgorithm::PoeOrder4Vel, SplineAlgorithm::GlobalOrder3,
                              SplineAlgorithm::GlobalOrder4, SplineAlgorithm::GlobalOrder3Vel,
                              SplineAlgorithm::GlobalOrder4Vel}) {
    EXPECT_LT(max_spline_error(build_spline(alg, data), c).max(), 1e-10) << to_string(alg);
  }
}

TEST(RodSpline, KnotStrainsReduceError) {
  const RodModel m = rubber_square();
  const AlgebraVector v0 = start_strain_for_terminal_wrench(m, square_terminal_wrench());
  const RodCurve c = integrate_reference(m, v0, stations_for(5, 2000));
  const KnotData data = rod_knot_data(m, c, 5);
  const std::pair<SplineAlgorithm, SplineAlgorithm> pairs[] = {
      {SplineAlgorithm::PoeOrder3, SplineAlgorithm::PoeOrder3Vel},
      {SplineAlgorithm::PoeOrder4, SplineAlgorithm::PoeOrder4Vel},
      {SplineAlgorithm::GlobalOrder3, SplineAlgorithm::GlobalOrder3Vel},
      {SplineAlgorithm::GlobalOrder4, SplineAlgorithm::GlobalOrder4Vel}};
  for (const auto& [jet_only, with_strains] : pairs) {
    const PoseError a = max_spline_error(build_spline(jet_only, data), c);
    const PoseError b = max_spline_error(build_spline(with_strains, data), c);
    EXPECT_LT(b.eps_r, a.eps_r) << to_string(with_strains);
    EXPECT_LT(b.eps_p, a.eps_p) << to_string(with_strains);
  }
}

TEST(RodSpline, DoublingKnotsReducesThirdOrderError) {
  const RodModel m = rubber_square();
  const AlgebraVector v0 = start_strain_for_terminal_wrench(m, square_terminal_wrench());
  for (SplineAlgorithm alg : {SplineAlgorithm::PoeOrder3Vel, SplineAlgorithm::GlobalOrder3Vel}) {
    double err[2];
    int slot = 0;
    for (int knots : {5, 10}) {
      const RodCurve c = integrate_reference(m, v0, stations_for(knots, 2000));
      err[slot++] = max_spline_error(build_spline(alg, rod_knot_data(m, c, knots)), c).max();
    }
    EXPECT_GE(err[0] / err[1], 4.0) << to_string(alg);
  }
}

TEST(RodSpline, FlatRodProfile) {
  const RodModel m = rubber_flat();
  const AlgebraVector v0 = m.strain_from_end_wrench(wrench({0, 0.002, 0.002}, {0, -0.03, 0.01}));
  double with_strains[2];
  int slot = 0;
  for (int knots : {5, 10}) {
    const RodCurve c = integrate_reference(m, v0, stations_for(knots, 2000));
    const KnotData data = rod_knot_data(m, c, knots);
    const PoseError jet_only = max_spline_error(build_spline(SplineAlgorithm::PoeOrder3, data), c);
    const PoseError vel = max_spline_error(build_spline(SplineAlgorithm::PoeOrder3Vel, data), c);
    EXPECT_LT(vel.max(), jet_only.max()) << knots << " knots";
    with_strains[slot++] = vel.max();
    // Force balance: the terminal stress, rotated to the base frame, cancels the start force.
    const Eigen::Vector3d force = c.poses.back().rotation() * m.stress(c.strains.back()).trans();
    EXPECT_LT((force - Eigen::Vector3d(0, 0.03, -0.01)).norm(), 1e-9);
  }
  EXPECT_GE(with_strains[0] / with_strains[1], 4.0);
}

TEST(RodSpline, KnotDataValidation) {
  const RodModel m = rubber_square();
  const RodCurve c = integrate_reference(m, m.reference_strain, 10);
  EXPECT_THROW(rod_knot_data(m, c, 4), Error);
  const KnotData d = rod_knot_data(m, c, 6);
  EXPECT_EQ(d.times.size(), 6u);
  EXPECT_DOUBLE_EQ(d.times.back(), 1.0);
  EXPECT_EQ(d.initial_jet.size(), 3u);
}
