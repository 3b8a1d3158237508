#include "liespline/group.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <string>

#include "liespline/error.hpp"

namespace liespline {

std::string_view to_string(GroupTag group) {
  switch (group) {
    case GroupTag::SO3: return "SO3";
    case GroupTag::SE3: return "SE3";
    case GroupTag::SO3xR3: return "SO3xR3";
  }
  return "SO3";
}

GroupTag group_from_string(std::string_view name) {
  if (name == "SO3") return GroupTag::SO3;
  if (name == "SE3") return GroupTag::SE3;
  if (name == "SO3xR3") return GroupTag::SO3xR3;
  throw Error(ErrorCode::InvalidArgument, "unknown group tag '" + std::string(name) + "'");
}

int algebra_dim(GroupTag group) { return group == GroupTag::SO3 ? 3 : 6; }

Eigen::Matrix3d skew(const Eigen::Vector3d& x) {
  Eigen::Matrix3d m;
  m << 0.0, -x.z(), x.y(),
       x.z(), 0.0, -x.x(),
       -x.y(), x.x(), 0.0;
  return m;
}

Eigen::Vector3d unskew(const Eigen::Matrix3d& m) {
  return Eigen::Vector3d(m(2, 1) - m(1, 2), m(0, 2) - m(2, 0), m(1, 0) - m(0, 1)) * 0.5;
}

void require_same_group(GroupTag a, GroupTag b, std::string_view where) {
  if (a != b) {
    throw Error(ErrorCode::GroupMismatch, std::string(where) + ": " + std::string(to_string(a)) +
                                              " vs " + std::string(to_string(b)));
  }
}

// ---------------------------------------------------------------------------
// AlgebraVector

AlgebraVector::AlgebraVector() : group_(GroupTag::SO3), coords_(Coords::Zero(3)) {}

AlgebraVector::AlgebraVector(GroupTag group, const Coords& coords) : group_(group), coords_(coords) {
  if (coords_.size() != algebra_dim(group)) {
    throw Error(ErrorCode::InvalidArgument, "algebra vector of " + std::string(to_string(group)) +
                                                " needs " + std::to_string(algebra_dim(group)) +
                                                " coordinates, got " + std::to_string(coords_.size()));
  }
}

AlgebraVector AlgebraVector::zero(GroupTag group) {
  return AlgebraVector(group, Coords::Zero(algebra_dim(group)));
}

AlgebraVector AlgebraVector::so3(const Eigen::Vector3d& x) { return AlgebraVector(GroupTag::SO3, x); }

AlgebraVector AlgebraVector::se3(const Eigen::Vector3d& x, const Eigen::Vector3d& y) {
  return from_parts(GroupTag::SE3, x, y);
}

AlgebraVector AlgebraVector::so3r3(const Eigen::Vector3d& x, const Eigen::Vector3d& y) {
  return from_parts(GroupTag::SO3xR3, x, y);
}

AlgebraVector AlgebraVector::from_parts(GroupTag group, const Eigen::Vector3d& x, const Eigen::Vector3d& y) {
  if (group == GroupTag::SO3) return so3(x);
  Coords c(6);
  c << x, y;
  return AlgebraVector(group, c);
}

Eigen::Vector3d AlgebraVector::trans() const {
  if (group_ == GroupTag::SO3) return Eigen::Vector3d::Zero();
  return coords_.tail<3>();
}

AlgebraVector& AlgebraVector::operator+=(const AlgebraVector& other) {
  require_same_group(group_, other.group_, "algebra addition");
  coords_ += other.coords_;
  return *this;
}

AlgebraVector& AlgebraVector::operator-=(const AlgebraVector& other) {
  require_same_group(group_, other.group_, "algebra subtraction");
  coords_ -= other.coords_;
  return *this;
}

AlgebraVector& AlgebraVector::operator*=(double s) {
  coords_ *= s;
  return *this;
}

AlgebraVector operator+(AlgebraVector a, const AlgebraVector& b) { return a += b; }
AlgebraVector operator-(AlgebraVector a, const AlgebraVector& b) { return a -= b; }
AlgebraVector operator-(AlgebraVector a) { return a *= -1.0; }
AlgebraVector operator*(double s, AlgebraVector a) { return a *= s; }
AlgebraVector operator*(AlgebraVector a, double s) { return a *= s; }
AlgebraVector operator/(AlgebraVector a, double s) { return a *= 1.0 / s; }

AlgebraVector operator*(const OpMatrix& m, const AlgebraVector& a) {
  if (m.cols() != a.dim() || m.rows() != a.dim()) {
    throw Error(ErrorCode::GroupMismatch, "operator size does not match algebra dimension");
  }
  return AlgebraVector(a.group(), m * a.coords());
}

// ---------------------------------------------------------------------------
// GroupElement

Eigen::Matrix3d orthonormalize(const Eigen::Matrix3d& R) {
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(R, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Matrix3d U = svd.matrixU();
  const Eigen::Matrix3d V = svd.matrixV();
  if ((U * V.transpose()).determinant() < 0.0) U.col(2) *= -1.0;
  return U * V.transpose();
}

GroupElement::GroupElement()
    : group_(GroupTag::SO3), R_(Eigen::Matrix3d::Identity()), r_(Eigen::Vector3d::Zero()) {}

GroupElement::GroupElement(GroupTag group, const Eigen::Matrix3d& R, const Eigen::Vector3d& r)
    : group_(group), R_(R), r_(group == GroupTag::SO3 ? Eigen::Vector3d::Zero() : r) {}

GroupElement make_element_unchecked(GroupTag group, const Eigen::Matrix3d& R, const Eigen::Vector3d& r) {
  return GroupElement(group, R, r);
}

GroupElement GroupElement::identity(GroupTag group) {
  return GroupElement(group, Eigen::Matrix3d::Identity(), Eigen::Vector3d::Zero());
}

GroupElement GroupElement::from_parts(GroupTag group, const Eigen::Matrix3d& R, const Eigen::Vector3d& r,
                                      double tol) {
  if (!R.allFinite() || !r.allFinite()) throw Error(ErrorCode::NonFinite, "pose has non-finite entries");
  const double drift = (R.transpose() * R - Eigen::Matrix3d::Identity()).norm();
  if (drift > tol || R.determinant() <= 0.0) {
    throw Error(ErrorCode::NotOrthonormal,
                "rotation deviates from SO(3) by " + std::to_string(drift) + " (tolerance " +
                    std::to_string(tol) + ")");
  }
  return GroupElement(group, drift > 1e-14 ? orthonormalize(R) : R, r);
}

GroupElement GroupElement::from_matrix(GroupTag group, const Eigen::MatrixXd& m, double tol) {
  if (group == GroupTag::SO3) {
    if (m.rows() != 3 || m.cols() != 3) throw Error(ErrorCode::InvalidArgument, "SO3 pose needs a 3x3 matrix");
    return from_parts(group, m, Eigen::Vector3d::Zero(), tol);
  }
  if (m.rows() != 4 || m.cols() != 4) throw Error(ErrorCode::InvalidArgument, "pose needs a 4x4 matrix");
  return from_parts(group, m.topLeftCorner<3, 3>(), m.topRightCorner<3, 1>(), tol);
}

Eigen::MatrixXd GroupElement::matrix() const {
  if (group_ == GroupTag::SO3) return R_;
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  m.topLeftCorner<3, 3>() = R_;
  m.topRightCorner<3, 1>() = r_;
  return m;
}

GroupElement GroupElement::inverse() const {
  const Eigen::Matrix3d Rt = R_.transpose();
  switch (group_) {
    case GroupTag::SO3: return GroupElement(group_, Rt, Eigen::Vector3d::Zero());
    case GroupTag::SE3: return GroupElement(group_, Rt, -(Rt * r_));
    case GroupTag::SO3xR3: return GroupElement(group_, Rt, -r_);
  }
  return *this;
}

GroupElement GroupElement::operator*(const GroupElement& other) const {
  require_same_group(group_, other.group_, "group composition");
  Eigen::Matrix3d R = R_ * other.R_;
  // Long products drift off SO(3) slowly; project once drift becomes visible.
  if ((R.transpose() * R - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() > 1e-13) R = orthonormalize(R);
  switch (group_) {
    case GroupTag::SO3: return GroupElement(group_, R, Eigen::Vector3d::Zero());
    case GroupTag::SE3: return GroupElement(group_, R, R_ * other.r_ + r_);
    case GroupTag::SO3xR3: return GroupElement(group_, R, r_ + other.r_);
  }
  return *this;
}

double GroupElement::distance(const GroupElement& other) const {
  return (R_ - other.R_).norm() + (r_ - other.r_).norm();
}

}  // namespace liespline
