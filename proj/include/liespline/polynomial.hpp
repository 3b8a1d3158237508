#pragma once

#include <optional>
#include <vector>

#include "liespline/group.hpp"

namespace liespline {

/// Algebra-valued polynomial sum_j c_j tau^j on tau in [0, 1], monomial basis.
class CoordinatePolynomial {
 public:
  CoordinatePolynomial() = default;
  explicit CoordinatePolynomial(std::vector<AlgebraVector> coeffs);

  /// Degree-k polynomial with coefficients c_0..c_{k-1} = `lower` and value `end` at tau = 1.
  /// Evaluated in the basis tau^j - tau^k, so both endpoints are reproduced exactly however
  /// large the interior coefficients grow.
  static CoordinatePolynomial interpolating(std::vector<AlgebraVector> lower, const AlgebraVector& end);

  GroupTag group() const { return coeffs_.front().group(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<AlgebraVector>& coefficients() const { return coeffs_; }
  const AlgebraVector& coefficient(int j) const { return coeffs_.at(j); }

  /// Value (deriv = 0) or tau-derivative of order deriv.
  AlgebraVector eval(double tau, int deriv = 0) const;

 private:
  std::vector<AlgebraVector> coeffs_;
  std::optional<AlgebraVector> end_;
};

}  // namespace liespline
