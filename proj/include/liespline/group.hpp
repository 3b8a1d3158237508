#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <string_view>
#include <vector>

namespace liespline {

enum class GroupTag { SO3, SE3, SO3xR3 };

std::string_view to_string(GroupTag group);
GroupTag group_from_string(std::string_view name);

/// Dimension of the Lie algebra: 3 for SO(3), 6 otherwise.
int algebra_dim(GroupTag group);

/// Coordinates of an algebra element, stack allocated (at most 6 entries).
using Coords = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, 6, 1>;
/// Linear operator on an algebra (ad, Ad, dexp and friends).
using OpMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, 6, 6>;

Eigen::Matrix3d skew(const Eigen::Vector3d& x);
Eigen::Vector3d unskew(const Eigen::Matrix3d& m);

/// Element of so(3), se(3) or so(3)+R^3. Layout is [rotational; translational].
class AlgebraVector {
 public:
  AlgebraVector();
  AlgebraVector(GroupTag group, const Coords& coords);

  static AlgebraVector zero(GroupTag group);
  static AlgebraVector so3(const Eigen::Vector3d& x);
  static AlgebraVector se3(const Eigen::Vector3d& x, const Eigen::Vector3d& y);
  static AlgebraVector so3r3(const Eigen::Vector3d& x, const Eigen::Vector3d& y);
  /// Builds from rotational and translational parts; y is ignored for SO(3).
  static AlgebraVector from_parts(GroupTag group, const Eigen::Vector3d& x, const Eigen::Vector3d& y);

  GroupTag group() const { return group_; }
  int dim() const { return static_cast<int>(coords_.size()); }
  const Coords& coords() const { return coords_; }
  Coords& coords() { return coords_; }
  double operator[](int i) const { return coords_[i]; }

  Eigen::Vector3d rot() const { return coords_.head<3>(); }
  /// Translational part; zero for SO(3).
  Eigen::Vector3d trans() const;

  double norm() const { return coords_.norm(); }
  bool is_zero() const { return coords_.isZero(0.0); }

  AlgebraVector& operator+=(const AlgebraVector& other);
  AlgebraVector& operator-=(const AlgebraVector& other);
  AlgebraVector& operator*=(double s);

 private:
  GroupTag group_;
  Coords coords_;
};

AlgebraVector operator+(AlgebraVector a, const AlgebraVector& b);
AlgebraVector operator-(AlgebraVector a, const AlgebraVector& b);
AlgebraVector operator-(AlgebraVector a);
AlgebraVector operator*(double s, AlgebraVector a);
AlgebraVector operator*(AlgebraVector a, double s);
AlgebraVector operator/(AlgebraVector a, double s);
/// Applies a linear operator on the algebra.
AlgebraVector operator*(const OpMatrix& m, const AlgebraVector& a);

/// Throws GroupMismatch unless both tags agree.
void require_same_group(GroupTag a, GroupTag b, std::string_view where);

/// Velocity jet: entry j is the j-th derivative of the left-trivialized velocity.
using Jet = std::vector<AlgebraVector>;

/// Element of SO(3), SE(3) or SO(3)xR^3, stored as (R, r). r is zero for SO(3).
class GroupElement {
 public:
  GroupElement();

  static GroupElement identity(GroupTag group);
  /// Validates R (NotOrthonormal if off by more than tol) and re-projects it onto SO(3).
  static GroupElement from_parts(GroupTag group, const Eigen::Matrix3d& R, const Eigen::Vector3d& r,
                                 double tol = 1e-6);
  /// Accepts a 3x3 (SO3) or 4x4 homogeneous matrix.
  static GroupElement from_matrix(GroupTag group, const Eigen::MatrixXd& m, double tol = 1e-6);

  GroupTag group() const { return group_; }
  const Eigen::Matrix3d& rotation() const { return R_; }
  const Eigen::Vector3d& translation() const { return r_; }

  /// 3x3 for SO(3), 4x4 homogeneous otherwise.
  Eigen::MatrixXd matrix() const;

  GroupElement inverse() const;
  GroupElement operator*(const GroupElement& other) const;

  /// Frobenius distance of rotations plus Euclidean distance of translations.
  double distance(const GroupElement& other) const;

 private:
  GroupElement(GroupTag group, const Eigen::Matrix3d& R, const Eigen::Vector3d& r);
  friend GroupElement make_element_unchecked(GroupTag, const Eigen::Matrix3d&, const Eigen::Vector3d&);

  GroupTag group_;
  Eigen::Matrix3d R_;
  Eigen::Vector3d r_;
};

/// Internal constructor for rotations known to be orthonormal (results of exp and products).
GroupElement make_element_unchecked(GroupTag group, const Eigen::Matrix3d& R, const Eigen::Vector3d& r);

/// Nearest rotation in the Frobenius sense (polar factor).
Eigen::Matrix3d orthonormalize(const Eigen::Matrix3d& R);

}  // namespace liespline
