#pragma once

#include "liespline/group.hpp"

namespace liespline {

/// Rotation angles within this distance of pi are rejected by log.
inline constexpr double kAngleNearPiEps = 1e-6;

/// Lie bracket [a, b] = ad_a b.
AlgebraVector bracket(const AlgebraVector& a, const AlgebraVector& b);

/// Matrix of ad_a.
OpMatrix ad_matrix(const AlgebraVector& a);

/// Matrix of Ad_g.
OpMatrix Ad_matrix(const GroupElement& g);

GroupElement exp(const AlgebraVector& a);

/// Principal logarithm. Throws AngleNearPi when the rotation angle is within
/// kAngleNearPiEps of pi, NotOrthonormal if R drifted off SO(3).
AlgebraVector log(const GroupElement& g);

/// Logarithm on the branch whose rotational part is closest to `hint`
/// (principal vector shifted by multiples of 2*pi along its axis).
AlgebraVector log_near(const GroupElement& g, const AlgebraVector& hint);

/// Right-trivialized differential of exp and its inverse.
OpMatrix dexp(const AlgebraVector& a);
OpMatrix dexp_inv(const AlgebraVector& a);

/// Directional derivative (D_a dexp)(dir), as a matrix acting on the algebra.
OpMatrix d_dexp(const AlgebraVector& a, const AlgebraVector& dir);
OpMatrix d_dexp_inv(const AlgebraVector& a, const AlgebraVector& dir);

/// Second directional derivative (D^2_a dexp)(dir1, dir2); symmetric in the directions.
OpMatrix d2_dexp(const AlgebraVector& a, const AlgebraVector& dir1, const AlgebraVector& dir2);
OpMatrix d2_dexp_inv(const AlgebraVector& a, const AlgebraVector& dir1, const AlgebraVector& dir2);

/// Scalar kernels of the rotation angle phi.
struct ScalarKernels {
  double alpha;  ///< sin(phi)/phi
  double beta;   ///< (sin(phi/2)/(phi/2))^2
  double gamma;  ///< alpha/beta
  double delta;  ///< (1 - alpha)/phi^2
};

/// Closed forms above phi = 1e-4, sixth-order Taylor expansions below.
ScalarKernels scalar_kernels(double phi);

}  // namespace liespline
