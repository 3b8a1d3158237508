#include <gtest/gtest.h>

#include <cmath>

#include "liespline/bezier.hpp"
#include "liespline/error.hpp"
#include "liespline/lie.hpp"
#include "oracles.hpp"

using namespace liespline;

namespace {

ControlNet random_net(std::mt19937_64& rng, GroupTag group, int n) {
  ControlNet net{oracle::random_element(rng, group)};
  for (int i = 1; i <= n; ++i) net.push_back(net.back() * exp(oracle::random_algebra(rng, group, 1.0, 1.0)));
  return net;
}

/// Frames F0..F3 of the four-pose waypoint example on SO(3) x R^3.
ControlNet waypoint_frames() {
  Eigen::Matrix3d R1, R2;
  R1 << 0, -1, 0, 1, 0, 0, 0, 0, 1;
  R2 << 0, 0, 1, 1, 0, 0, 0, 1, 0;
  const GroupTag g = GroupTag::SO3xR3;
  return {GroupElement::identity(g), GroupElement::from_parts(g, R1, Eigen::Vector3d(1, 4, 1)),
          GroupElement::from_parts(g, R2, Eigen::Vector3d(4, 4, 4)),
          GroupElement::from_parts(g, Eigen::Matrix3d::Identity(), Eigen::Vector3d(8, 4, 1))};
}

const GroupTag kGroups[] = {GroupTag::SO3, GroupTag::SE3, GroupTag::SO3xR3};

}  // namespace

TEST(DeCasteljau, EndpointsAreExact) {
  std::mt19937_64 rng(1);
  for (GroupTag group : kGroups) {
    const ControlNet net = random_net(rng, group, 4);
    EXPECT_EQ(decasteljau_eval(net, 0.0).distance(net.front()), 0.0);
    EXPECT_EQ(decasteljau_eval(net, 1.0).distance(net.back()), 0.0);
    EXPECT_LT(decasteljau_eval(net, 1e-12).distance(net.front()), 1e-10);
    EXPECT_LT(decasteljau_eval(net, 1 - 1e-12).distance(net.back()), 1e-10);
  }
}

TEST(DeCasteljau, SingleSpanIsSubgroupArc) {
  std::mt19937_64 rng(2);
  for (GroupTag group : kGroups) {
    const ControlNet net = random_net(rng, group, 1);
    const AlgebraVector xi = log(net[0].inverse() * net[1]);
    for (double tau : {0.2, 0.5, 0.9}) {
      EXPECT_LT(decasteljau_eval(net, tau).distance(net[0] * exp(tau * xi)), 1e-14);
    }
  }
}

TEST(DeCasteljau, LeftInvariance) {
  std::mt19937_64 rng(3);
  for (GroupTag group : kGroups) {
    const ControlNet net = random_net(rng, group, 5);
    const GroupElement g = oracle::random_element(rng, group);
    ControlNet moved;
    for (const GroupElement& h : net) moved.push_back(g * h);
    for (double tau : {0.1, 0.4, 0.75}) {
      EXPECT_LT(decasteljau_eval(moved, tau).distance(g * decasteljau_eval(net, tau)), 1e-12);
    }
  }
}

TEST(DeCasteljau, AbelianReductionToScalarRecursion) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> coord(-0.8, 0.8);
  for (GroupTag group : kGroups) {
    const AlgebraVector axis = oracle::random_algebra(rng, group, 1.0, 1.0);
    const double scale = 1.0 / std::max(1.0, axis.rot().norm());
    std::vector<double> control;
    ControlNet net;
    for (int i = 0; i < 6; ++i) {
      control.push_back(coord(rng) * scale);
      net.push_back(exp(control.back() * axis));
    }
    for (double tau : {0.0, 0.15, 0.5, 0.85, 1.0}) {
      const AlgebraVector got = log(decasteljau_eval(net, tau));
      EXPECT_LT((got - oracle::decasteljau(control, tau) * axis).norm(), 1e-12) << "tau=" << tau;
    }
  }
}

TEST(DeCasteljau, BernsteinControlsReproduceSubgroupPolynomial) {
  // p(tau) = 0.3 tau + 0.9 tau^2 - 0.5 tau^3; Bernstein controls of degree 3.
  const double a1 = 0.3, a2 = 0.9, a3 = -0.5;
  const std::vector<double> b{0.0, a1 / 3, 2 * a1 / 3 + a2 / 3, a1 + a2 + a3};
  const AlgebraVector axis = AlgebraVector::se3(Eigen::Vector3d(0.4, -1.2, 0.7), Eigen::Vector3d(1, 2, -0.5));
  const GroupElement h0 = exp(AlgebraVector::se3(Eigen::Vector3d(0.1, 0.2, 0.3), Eigen::Vector3d(-1, 0, 2)));
  ControlNet net;
  for (double c : b) net.push_back(h0 * exp(c * axis));
  for (int i = 0; i <= 20; ++i) {
    const double tau = i / 20.0;
    const double p = a1 * tau + a2 * tau * tau + a3 * tau * tau * tau;
    EXPECT_LT(decasteljau_eval(net, tau).distance(h0 * exp(p * axis)), 1e-11);
  }
}

TEST(DeCasteljau, WaypointFramesAreNotInterpolated) {
  const ControlNet net = waypoint_frames();
  const std::vector<GroupElement> curve = decasteljau_curve(net, 401);
  for (int k : {1, 2}) {
    double closest = 1e300;
    for (const GroupElement& h : curve) closest = std::min(closest, h.distance(net[k]));
    EXPECT_GT(closest, 1e-2) << "F" << k;
  }
}

TEST(DeCasteljau, CurveSampling) {
  std::mt19937_64 rng(5);
  const ControlNet net = random_net(rng, GroupTag::SE3, 3);
  const std::vector<GroupElement> two = decasteljau_curve(net, 2);
  ASSERT_EQ(two.size(), 2u);
  EXPECT_EQ(two[0].distance(net.front()), 0.0);
  EXPECT_EQ(two[1].distance(net.back()), 0.0);
  const std::vector<GroupElement> five = decasteljau_curve(net, 5);
  EXPECT_EQ(five[2].distance(decasteljau_eval(net, 0.5)), 0.0);
  EXPECT_THROW(decasteljau_curve(net, 1), Error);
}

TEST(DeCasteljau, Errors) {
  EXPECT_THROW(decasteljau_eval({}, 0.5), Error);
  const ControlNet net = waypoint_frames();
  try {
    decasteljau_eval(net, 1.5);
    FAIL() << "expected OutOfDomain";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OutOfDomain);
  }
  const GroupTag g = GroupTag::SO3;
  const ControlNet flip{GroupElement::identity(g), exp(AlgebraVector::so3(Eigen::Vector3d(0, 0, 1))),
                        exp(AlgebraVector::so3(Eigen::Vector3d(0, 0, 1 + M_PI - 1e-9)))};
  try {
    decasteljau_eval(flip, 0.5);
    FAIL() << "expected AngleNearPi";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::AngleNearPi);
    EXPECT_NE(std::string(e.what()).find("level 1, index 1"), std::string::npos) << e.what();
  }
}
