#pragma once

#include <vector>

#include "liespline/group.hpp"
#include "liespline/polynomial.hpp"

namespace liespline {

/// Highest order handled by the coefficient recursion.
inline constexpr int kMaxSeriesOrder = 8;

/// Phi_1 .. Phi_k for the jet [v0, v0', ..., v0^(k-1)] (k = jet.size()), i.e. the
/// tau-derivatives at 0 of the solution of xi' = dexp^-1_{-xi} v, xi(0) = 0.
/// `right_invariant` drops the alternating sign, giving the right-invariant variant.
std::vector<AlgebraVector> phi_recursion(const Jet& jet, bool right_invariant = false);

/// a_3 .. a_k (entry r-3 holds a_r); empty for k < 3. Needs jet.size() >= k - 1.
std::vector<AlgebraVector> a_coefficients(const Jet& jet, int k);

/// k-th order extrapolation xi(tau) = sum_j Phi_j tau^j / j!. Needs jet.size() >= k.
CoordinatePolynomial extrapolate(const Jet& jet, int k);

}  // namespace liespline
