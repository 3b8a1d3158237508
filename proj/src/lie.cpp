#include "liespline/lie.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "coeff_jets.hpp"
#include "liespline/error.hpp"

namespace liespline {
namespace {

constexpr double kSmallAngle = 1e-4;
constexpr double kPi = std::numbers::pi;

using detail::FamilyCoeffs;
using detail::family_derivative;

Eigen::Matrix3d so3_exp(const Eigen::Vector3d& x) {
  const ScalarKernels k = scalar_kernels(x.norm());
  const Eigen::Matrix3d X = skew(x);
  return Eigen::Matrix3d::Identity() + k.alpha * X + 0.5 * k.beta * X * X;
}

Eigen::Matrix3d so3_dexp(const Eigen::Vector3d& x) {
  const ScalarKernels k = scalar_kernels(x.norm());
  const Eigen::Matrix3d X = skew(x);
  return Eigen::Matrix3d::Identity() + 0.5 * k.beta * X + k.delta * X * X;
}

double inv_quadratic_coeff(double phi) {
  if (phi < kSmallAngle) {
    const double p2 = phi * phi;
    return 1.0 / 12.0 + p2 * (1.0 / 720.0 + p2 * (1.0 / 30240.0 + p2 / 1209600.0));
  }
  return (1.0 - scalar_kernels(phi).gamma) / (phi * phi);
}

Eigen::Matrix3d so3_dexp_inv(const Eigen::Vector3d& x) {
  const Eigen::Matrix3d X = skew(x);
  return Eigen::Matrix3d::Identity() - 0.5 * X + inv_quadratic_coeff(x.norm()) * X * X;
}

OpMatrix lower_triangular(const Eigen::Matrix3d& diag, const Eigen::Matrix3d& lower) {
  OpMatrix m(6, 6);
  m << diag, Eigen::Matrix3d::Zero(), lower, diag;
  return m;
}

OpMatrix block_diagonal(const Eigen::Matrix3d& a, const Eigen::Matrix3d& b) {
  OpMatrix m = OpMatrix::Zero(6, 6);
  m.block<3, 3>(0, 0) = a;
  m.block<3, 3>(3, 3) = b;
  return m;
}

struct AngleAxis {
  double angle;
  Eigen::Vector3d axis;  // unit; arbitrary when angle == 0
};

AngleAxis rotation_angle_axis(const Eigen::Matrix3d& R) {
  const Eigen::Vector3d s = unskew(R);  // sin(phi) * n
  const double c = 0.5 * (R.trace() - 1.0);
  const double sn = s.norm();
  const double phi = std::atan2(sn, c);
  if (sn == 0.0 && c > 0.0) return {0.0, Eigen::Vector3d::UnitX()};
  if (c > -0.9) return {phi, s / sn};
  // Near pi the skew part is tiny; recover the axis from the symmetric part.
  const Eigen::Matrix3d B = 0.5 * (R + R.transpose()) - c * Eigen::Matrix3d::Identity();
  int col = 0;
  B.diagonal().maxCoeff(&col);
  Eigen::Vector3d n = B.col(col).normalized();
  if (n.dot(s) < 0.0) n = -n;
  return {phi, n};
}

void check_orthonormal(const Eigen::Matrix3d& R) {
  const double drift = (R.transpose() * R - Eigen::Matrix3d::Identity()).norm();
  if (!(drift <= 1e-9)) {
    throw Error(ErrorCode::NotOrthonormal, "rotation drift " + std::to_string(drift) + " in log");
  }
}

Eigen::Vector3d so3_log(const Eigen::Matrix3d& R) {
  check_orthonormal(R);
  const AngleAxis aa = rotation_angle_axis(R);
  if (aa.angle > kPi - kAngleNearPiEps) {
    throw Error(ErrorCode::AngleNearPi,
                "rotation angle " + std::to_string(aa.angle) + " is within " +
                    std::to_string(kAngleNearPiEps) + " of pi");
  }
  if (aa.angle < kSmallAngle) {
    // phi / sin(phi) * s with s = sin(phi) n
    const double p2 = aa.angle * aa.angle;
    return (1.0 + p2 / 6.0 + 7.0 * p2 * p2 / 360.0) * unskew(R);
  }
  return aa.angle * aa.axis;
}

FamilyCoeffs coeffs_for(const Eigen::Vector3d& x, bool inverse) {
  const double s = x.squaredNorm();
  return inverse ? detail::dexp_inv_family(s) : detail::dexp_family(s);
}

OpMatrix family_op(const AlgebraVector& a, bool inverse, std::span<const AlgebraVector> dirs) {
  for (const AlgebraVector& d : dirs) require_same_group(a.group(), d.group(), "dexp derivative");
  const Eigen::Vector3d x = a.rot();
  const FamilyCoeffs coeffs = coeffs_for(x, inverse);
  const int m = static_cast<int>(dirs.size());

  std::array<Eigen::Vector3d, 3> u;
  for (int i = 0; i < m; ++i) u[i] = dirs[i].rot();
  const Eigen::Matrix3d diag = family_derivative(coeffs, x, std::span(u.data(), m));

  switch (a.group()) {
    case GroupTag::SO3: return diag;
    case GroupTag::SO3xR3:
      return block_diagonal(diag, m == 0 ? Eigen::Matrix3d(Eigen::Matrix3d::Identity()) : Eigen::Matrix3d(Eigen::Matrix3d::Zero()));
    case GroupTag::SE3: {
      // Lower block is D M(x)[y]; differentiate it through x and y.
      std::array<Eigen::Vector3d, 3> w;
      w[0] = a.trans();
      for (int i = 0; i < m; ++i) w[i + 1] = u[i];
      Eigen::Matrix3d lower = family_derivative(coeffs, x, std::span(w.data(), m + 1));
      for (int i = 0; i < m; ++i) {
        std::array<Eigen::Vector3d, 3> v;
        int n = 0;
        v[n++] = dirs[i].trans();
        for (int j = 0; j < m; ++j)
          if (j != i) v[n++] = u[j];
        lower += family_derivative(coeffs, x, std::span(v.data(), n));
      }
      return lower_triangular(diag, lower);
    }
  }
  return diag;
}

}  // namespace

ScalarKernels scalar_kernels(double phi) {
  ScalarKernels k{};
  const double p2 = phi * phi;
  if (phi < kSmallAngle) {
    k.alpha = 1.0 - p2 / 6.0 + p2 * p2 / 120.0 - p2 * p2 * p2 / 5040.0;
    k.beta = 1.0 - p2 / 12.0 + p2 * p2 / 360.0 - p2 * p2 * p2 / 20160.0;
    k.gamma = 1.0 - p2 / 12.0 - p2 * p2 / 720.0 - p2 * p2 * p2 / 30240.0;
    k.delta = 1.0 / 6.0 - p2 / 120.0 + p2 * p2 / 5040.0 - p2 * p2 * p2 / 362880.0;
    return k;
  }
  const double half = 0.5 * phi;
  const double sinc_half = std::sin(half) / half;
  k.alpha = std::sin(phi) / phi;
  k.beta = sinc_half * sinc_half;
  k.gamma = half / std::tan(half);
  k.delta = (1.0 - k.alpha) / p2;
  return k;
}

AlgebraVector bracket(const AlgebraVector& a, const AlgebraVector& b) {
  require_same_group(a.group(), b.group(), "bracket");
  const Eigen::Vector3d x1 = a.rot(), x2 = b.rot();
  switch (a.group()) {
    case GroupTag::SO3: return AlgebraVector::so3(x1.cross(x2));
    case GroupTag::SE3: return AlgebraVector::se3(x1.cross(x2), x1.cross(b.trans()) - x2.cross(a.trans()));
    case GroupTag::SO3xR3: return AlgebraVector::so3r3(x1.cross(x2), Eigen::Vector3d::Zero());
  }
  return a;
}

OpMatrix ad_matrix(const AlgebraVector& a) {
  const Eigen::Matrix3d X = skew(a.rot());
  switch (a.group()) {
    case GroupTag::SO3: return X;
    case GroupTag::SE3: return lower_triangular(X, skew(a.trans()));
    case GroupTag::SO3xR3: return block_diagonal(X, Eigen::Matrix3d::Zero());
  }
  return X;
}

OpMatrix Ad_matrix(const GroupElement& g) {
  const Eigen::Matrix3d& R = g.rotation();
  switch (g.group()) {
    case GroupTag::SO3: return R;
    case GroupTag::SE3: return lower_triangular(R, skew(g.translation()) * R);
    case GroupTag::SO3xR3: return block_diagonal(R, Eigen::Matrix3d::Identity());
  }
  return R;
}

GroupElement exp(const AlgebraVector& a) {
  if (!a.coords().allFinite()) throw Error(ErrorCode::NonFinite, "exp of non-finite algebra vector");
  const Eigen::Vector3d x = a.rot();
  const Eigen::Matrix3d R = so3_exp(x);
  switch (a.group()) {
    case GroupTag::SO3: return make_element_unchecked(a.group(), R, Eigen::Vector3d::Zero());
    case GroupTag::SE3: return make_element_unchecked(a.group(), R, so3_dexp(x) * a.trans());
    case GroupTag::SO3xR3: return make_element_unchecked(a.group(), R, a.trans());
  }
  return GroupElement::identity(a.group());
}

AlgebraVector log(const GroupElement& g) {
  const Eigen::Vector3d x = so3_log(g.rotation());
  switch (g.group()) {
    case GroupTag::SO3: return AlgebraVector::so3(x);
    case GroupTag::SE3: return AlgebraVector::se3(x, so3_dexp_inv(x) * g.translation());
    case GroupTag::SO3xR3: return AlgebraVector::so3r3(x, g.translation());
  }
  return AlgebraVector::zero(g.group());
}

AlgebraVector log_near(const GroupElement& g, const AlgebraVector& hint) {
  require_same_group(g.group(), hint.group(), "log_near");
  check_orthonormal(g.rotation());
  const AngleAxis aa = rotation_angle_axis(g.rotation());
  Eigen::Vector3d best = aa.angle < kSmallAngle ? so3_log(g.rotation()) : Eigen::Vector3d(aa.angle * aa.axis);
  if (aa.angle >= kSmallAngle) {
    double best_dist = (best - hint.rot()).norm();
    for (int k : {-2, -1, 1, 2}) {
      const Eigen::Vector3d cand = (aa.angle + 2.0 * kPi * k) * aa.axis;
      const double dist = (cand - hint.rot()).norm();
      if (dist < best_dist) {
        best_dist = dist;
        best = cand;
      }
    }
  }
  switch (g.group()) {
    case GroupTag::SO3: return AlgebraVector::so3(best);
    case GroupTag::SE3: return AlgebraVector::se3(best, so3_dexp_inv(best) * g.translation());
    case GroupTag::SO3xR3: return AlgebraVector::so3r3(best, g.translation());
  }
  return hint;
}

OpMatrix dexp(const AlgebraVector& a) {
  const Eigen::Vector3d x = a.rot();
  const Eigen::Matrix3d A = so3_dexp(x);
  switch (a.group()) {
    case GroupTag::SO3: return A;
    case GroupTag::SO3xR3: return block_diagonal(A, Eigen::Matrix3d::Identity());
    case GroupTag::SE3: {
      const std::array<Eigen::Vector3d, 1> y{a.trans()};
      return lower_triangular(A, family_derivative(coeffs_for(x, false), x, y));
    }
  }
  return A;
}

OpMatrix dexp_inv(const AlgebraVector& a) {
  const Eigen::Vector3d x = a.rot();
  const Eigen::Matrix3d A = so3_dexp_inv(x);
  switch (a.group()) {
    case GroupTag::SO3: return A;
    case GroupTag::SO3xR3: return block_diagonal(A, Eigen::Matrix3d::Identity());
    case GroupTag::SE3: {
      const std::array<Eigen::Vector3d, 1> y{a.trans()};
      return lower_triangular(A, family_derivative(coeffs_for(x, true), x, y));
    }
  }
  return A;
}

OpMatrix d_dexp(const AlgebraVector& a, const AlgebraVector& dir) {
  const std::array<AlgebraVector, 1> dirs{dir};
  return family_op(a, false, dirs);
}

OpMatrix d_dexp_inv(const AlgebraVector& a, const AlgebraVector& dir) {
  const std::array<AlgebraVector, 1> dirs{dir};
  return family_op(a, true, dirs);
}

OpMatrix d2_dexp(const AlgebraVector& a, const AlgebraVector& dir1, const AlgebraVector& dir2) {
  const std::array<AlgebraVector, 2> dirs{dir1, dir2};
  return family_op(a, false, dirs);
}

OpMatrix d2_dexp_inv(const AlgebraVector& a, const AlgebraVector& dir1, const AlgebraVector& dir2) {
  const std::array<AlgebraVector, 2> dirs{dir1, dir2};
  return family_op(a, true, dirs);
}

}  // namespace liespline
