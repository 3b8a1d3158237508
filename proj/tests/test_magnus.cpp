#include <gtest/gtest.h>

#include <cmath>

#include "liespline/error.hpp"
#include "liespline/lie.hpp"
#include "liespline/magnus.hpp"
#include "oracles.hpp"

using namespace liespline;

namespace {

AlgebraVector br(const AlgebraVector& a, const AlgebraVector& b) { return bracket(a, b); }

Jet random_jet(std::mt19937_64& rng, GroupTag group, int n, double scale = 1.0) {
  Jet jet;
  for (int i = 0; i < n; ++i) jet.push_back(oracle::random_algebra(rng, group, scale, scale));
  return jet;
}

/// Hand-expanded coefficients up to order 5.
std::vector<AlgebraVector> phi_closed(const Jet& v) {
  const AlgebraVector& v0 = v[0];
  const AlgebraVector& v1 = v[1];
  const AlgebraVector& v2 = v[2];
  const AlgebraVector& v3 = v[3];
  const AlgebraVector& v4 = v[4];
  return {v0, v1, v2 + 0.5 * br(v0, v1), v3 + br(v0, v2),
          v4 + 1.5 * br(v0, v3) + br(v1, v2) + 0.5 * br(v1, br(v1, v0)) - br(v0, br(v0, v2)) / 6.0 -
              br(v0, br(v0, br(v0, v1))) / 6.0};
}

std::vector<AlgebraVector> a_closed(const Jet& v) {
  const AlgebraVector& v0 = v[0];
  const AlgebraVector& v1 = v[1];
  const AlgebraVector& v2 = v[2];
  const AlgebraVector& v3 = v[3];
  return {br(v0, v1) / 12.0, br(v0, v2) / 24.0,
          br(v0, v3) / 80.0 + br(v1, v2) / 120.0 + br(v1, br(v1, v0)) / 240.0 - br(v0, br(v0, v2)) / 720.0 -
              br(v0, br(v0, br(v0, v1))) / 720.0};
}

/// Order-5 terms from expanding xi' = dexp^-1_{-xi} v directly.
std::vector<AlgebraVector> phi_expanded(const Jet& v) {
  std::vector<AlgebraVector> phi = phi_closed(v);
  phi[4] += br(v[0], br(v[0], v[2])) / 3.0;
  return phi;
}

std::vector<AlgebraVector> a_expanded(const Jet& v) {
  std::vector<AlgebraVector> a = a_closed(v);
  a[2] += br(v[0], br(v[0], v[2])) / 360.0;
  return a;
}

AlgebraVector reference_coordinates(const Jet& jet, double T, int steps = 400) {
  return oracle::jet_motion_coordinates(jet, T, steps);
}

double slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= x.size();
  my /= y.size();
  double num = 0, den = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    num += (std::log(x[i]) - mx) * (std::log(y[i]) - my);
    den += (std::log(x[i]) - mx) * (std::log(x[i]) - mx);
  }
  return num / den;
}

}  // namespace

static void compare_closed_forms(int order, bool expanded) {
  std::mt19937_64 rng(5);
  for (GroupTag group : {GroupTag::SO3, GroupTag::SE3, GroupTag::SO3xR3}) {
    for (int trial = 0; trial < 50; ++trial) {
      const Jet jet = random_jet(rng, group, 5);
      const std::vector<AlgebraVector> phi = phi_recursion(jet);
      const std::vector<AlgebraVector> ref = expanded ? phi_expanded(jet) : phi_closed(jet);
      const std::vector<AlgebraVector> a = a_coefficients(jet, 5);
      const std::vector<AlgebraVector> aref = expanded ? a_expanded(jet) : a_closed(jet);
      ASSERT_EQ(phi.size(), 5u);
      ASSERT_EQ(a.size(), 3u);
      if (order < 5) {
        for (int i = 0; i < 4; ++i) EXPECT_LT((phi[i] - ref[i]).norm(), 1e-14) << "Phi_" << i + 1;
        for (int i = 0; i < 2; ++i) EXPECT_LT((a[i] - aref[i]).norm(), 1e-14) << "a_" << i + 3;
      } else {
        EXPECT_LT((phi[4] - ref[4]).norm(), 1e-14) << "Phi_5";
        EXPECT_LT((a[2] - aref[2]).norm(), 1e-14) << "a_5";
      }
    }
  }
}

TEST(PhiRecursion, MatchesClosedFormsThroughOrderFour) { compare_closed_forms(4, false); }

// The tabulated order-5 forms carry -1/6 [v0,[v0,v0'']] (and -1/720 in a5); expanding
// dexp^-1 directly gives +1/6 (+1/720). Kept red against the tabulated forms.
TEST(PhiRecursion, MatchesTabulatedOrderFive) { compare_closed_forms(5, false); }

TEST(PhiRecursion, MatchesDirectExpansionOrderFive) { compare_closed_forms(5, true); }

TEST(PhiRecursion, DirectExpansionSolvesReconstructionOde) {
  // Recover Phi_5 from the ODE solution: 120 (xi(T) - sum_{j<5} Phi_j T^j / j!) / T^5,
  // Richardson-extrapolated in T, then see which order-5 form it matches.
  std::mt19937_64 rng(17);
  const Jet jet = random_jet(rng, GroupTag::SE3, 5, 1.0);
  const std::vector<AlgebraVector> expanded = phi_expanded(jet);
  const std::vector<AlgebraVector> tabulated = phi_closed(jet);
  auto estimate = [&](double T) {
    AlgebraVector acc = reference_coordinates(jet, T, 200);
    double f = 1.0;
    for (int j = 0; j < 4; ++j) {
      f *= T / (j + 1);
      acc -= f * expanded[j];
    }
    return (120.0 / std::pow(T, 5)) * acc;
  };
  const AlgebraVector phi5 = 2.0 * estimate(0.01) - estimate(0.02);
  const double err_expanded = (phi5 - expanded[4]).norm();
  const double err_tabulated = (phi5 - tabulated[4]).norm();
  EXPECT_LT(err_expanded, 1e-2 * expanded[4].norm());
  EXPECT_GT(err_tabulated, 10 * err_expanded);
}

TEST(PhiRecursion, CommutingJetHasNoBrackets) {
  const AlgebraVector axis = AlgebraVector::se3(Eigen::Vector3d(0.3, -1, 2), Eigen::Vector3d(1, 1, 0));
  Jet jet;
  for (int i = 0; i < 8; ++i) jet.push_back((0.5 + i) * axis);
  const std::vector<AlgebraVector> phi = phi_recursion(jet);
  for (int i = 0; i < 8; ++i) EXPECT_LT((phi[i] - jet[i]).norm(), 1e-13);
  for (const AlgebraVector& a : a_coefficients(jet, 8)) EXPECT_LT(a.norm(), 1e-13);
}

TEST(PhiRecursion, ExampleValues) {
  const Jet jet{AlgebraVector::so3(Eigen::Vector3d(1, 0, 0)), AlgebraVector::so3(Eigen::Vector3d(0, 1, 0))};
  const std::vector<AlgebraVector> a = a_coefficients(jet, 3);
  ASSERT_EQ(a.size(), 1u);
  EXPECT_LT((a[0].coords() - Eigen::Vector3d(0, 0, 1.0 / 12.0)).norm(), 1e-16);
  EXPECT_TRUE(a_coefficients(jet, 2).empty());

  Jet no_accel{AlgebraVector::so3(Eigen::Vector3d(1, 2, 0)), AlgebraVector::so3(Eigen::Vector3d(0, 1, 3)),
               AlgebraVector::zero(GroupTag::SO3)};
  EXPECT_EQ(a_coefficients(no_accel, 4)[1].norm(), 0.0);
}

TEST(PhiRecursion, RejectsUnsupportedOrder) {
  std::mt19937_64 rng(1);
  EXPECT_THROW(phi_recursion(random_jet(rng, GroupTag::SO3, 9)), Error);
  EXPECT_THROW(phi_recursion(Jet{}), Error);
  EXPECT_THROW(a_coefficients(random_jet(rng, GroupTag::SO3, 2), 5), Error);
}

TEST(PhiRecursion, HighOrdersSolveReconstructionOde) {
  // The degree-8 extrapolation must agree with the true solution to O(T^9).
  std::mt19937_64 rng(9);
  const Jet jet = random_jet(rng, GroupTag::SE3, 8, 1.0);
  const CoordinatePolynomial xi = extrapolate(jet, 8);
  const double T = 0.1;
  const AlgebraVector ref = reference_coordinates(jet, T, 200);
  EXPECT_LT((xi.eval(T) - ref).norm(), 1e-10);
}

TEST(PhiRecursion, RightInvariantFlagMatchesRightReconstruction) {
  // g' = v g with g = exp(xi) gives xi' = dexp^-1_{xi} v.
  std::mt19937_64 rng(12);
  const Jet jet = random_jet(rng, GroupTag::SO3, 4);
  const std::vector<AlgebraVector> phi = phi_recursion(jet, true);
  EXPECT_LT((phi[2] - (jet[2] - 0.5 * bracket(jet[0], jet[1]))).norm(), 1e-14);
  // Same as the left-invariant recursion for the negated time direction brackets.
  EXPECT_LT((phi[3] - (jet[3] - bracket(jet[0], jet[2]))).norm(), 1e-14);
}

TEST(Extrapolate, FirstOrderIsLinear) {
  const Jet jet{AlgebraVector::so3(Eigen::Vector3d(0.1, 0.2, 0.3))};
  const CoordinatePolynomial p = extrapolate(jet, 1);
  EXPECT_EQ(p.degree(), 1);
  EXPECT_LT((p.eval(0.7) - 0.7 * jet[0]).norm(), 1e-16);
}

TEST(Extrapolate, LocalOrder) {
  std::mt19937_64 rng(21);
  for (int k = 2; k <= 5; ++k) {
    const Jet jet = random_jet(rng, GroupTag::SE3, 6, 1.0);
    const CoordinatePolynomial xi = extrapolate(jet, k);
    std::vector<double> Ts{0.4, 0.2, 0.1, 0.05}, errs;
    for (double T : Ts) {
      const AlgebraVector ref = reference_coordinates(jet, T, 400);
      errs.push_back(log(exp(-ref) * exp(xi.eval(T))).norm());
    }
    EXPECT_GE(slope(Ts, errs), k - 0.3) << "k = " << k;
    EXPECT_EQ(xi.eval(0.0).norm(), 0.0);
    EXPECT_LT((xi.eval(0.0, 1) - jet[0]).norm(), 1e-16);
  }
}
