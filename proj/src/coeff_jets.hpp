#pragma once

// Coefficients k1(s), k2(s) of the matrix functions
//   M(x) = I + k1(s) skew(x) + k2(s) skew(x)^2,   s = |x|^2,
// that make up dexp and dexp^-1 on so(3), together with their Taylor
// coefficients in s, and multilinear derivatives of M obtained by
// evaluating M on nilpotent perturbations x + e1 u1 + e2 u2 + e3 u3.

#include <Eigen/Core>
#include <array>
#include <span>

namespace liespline::detail {

inline constexpr int kJetOrder = 3;

/// Entry j holds f^(j)(s0) / j!.
using CoeffJet = std::array<double, kJetOrder + 1>;

struct FamilyCoeffs {
  CoeffJet k1;
  CoeffJet k2;
};

/// k1 = beta/2, k2 = delta.
FamilyCoeffs dexp_family(double s);
/// k1 = -1/2, k2 = (1 - gamma)/s.
FamilyCoeffs dexp_inv_family(double s);

/// D^m M(x)[dirs...] for m = dirs.size() <= 3 (m = 0 returns M(x)).
Eigen::Matrix3d family_derivative(const FamilyCoeffs& coeffs, const Eigen::Vector3d& x,
                                  std::span<const Eigen::Vector3d> dirs);

}  // namespace liespline::detail
