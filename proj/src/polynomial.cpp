#include "liespline/polynomial.hpp"

#include "liespline/error.hpp"

namespace liespline {

CoordinatePolynomial::CoordinatePolynomial(std::vector<AlgebraVector> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw Error(ErrorCode::InvalidArgument, "polynomial needs at least one coefficient");
  for (const AlgebraVector& c : coeffs_) require_same_group(coeffs_.front().group(), c.group(), "polynomial");
}

CoordinatePolynomial CoordinatePolynomial::interpolating(std::vector<AlgebraVector> lower, const AlgebraVector& end) {
  if (lower.empty()) throw Error(ErrorCode::InvalidArgument, "polynomial needs at least one coefficient");
  AlgebraVector top = end;
  for (const AlgebraVector& c : lower) top -= c;
  lower.push_back(top);
  CoordinatePolynomial p(std::move(lower));
  p.end_ = end;
  return p;
}

namespace {

/// deriv-th derivative of tau^j.
double monomial(double tau, int j, int deriv) {
  if (deriv > j) return 0.0;
  double f = 1.0;
  for (int i = 0; i < deriv; ++i) f *= (j - i);
  for (int i = deriv; i < j; ++i) f *= tau;
  return f;
}

}  // namespace

AlgebraVector CoordinatePolynomial::eval(double tau, int deriv) const {
  if (end_) {
    const int k = degree();
    const double top = monomial(tau, k, deriv);
    AlgebraVector acc = top * *end_ + ((deriv == 0 ? 1.0 : 0.0) - top) * coeffs_[0];
    for (int j = 1; j < k; ++j) acc += (monomial(tau, j, deriv) - top) * coeffs_[j];
    return acc;
  }
  AlgebraVector acc = AlgebraVector::zero(group());
  // Horner on the differentiated coefficients j!/(j-deriv)! c_j
  for (int j = degree(); j >= deriv; --j) {
    double factor = 1.0;
    for (int i = 0; i < deriv; ++i) factor *= (j - i);
    acc = tau * acc + factor * coeffs_[j];
  }
  return acc;
}

}  // namespace liespline
