#include "liespline/two_point.hpp"

#include <string>

#include "liespline/error.hpp"
#include "liespline/lie.hpp"
#include "liespline/magnus.hpp"

namespace liespline {
namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

void require_entries(const Jet& jet, int needed, const char* what) {
  if (static_cast<int>(jet.size()) < needed) {
    throw Error(ErrorCode::MissingVelocities, std::string(what) + " needs " + std::to_string(needed) +
                                                  " jet entries, got " + std::to_string(jet.size()));
  }
}

/// xi^(j)(0) / j! for j = 1..count, given the velocity jet at xi0.
std::vector<AlgebraVector> taylor_coefficients(const AlgebraVector& xi0, const Jet& jet, int count) {
  std::vector<AlgebraVector> out;
  if (count == 0) return out;
  Jet used(jet.begin(), jet.begin() + count);
  std::vector<AlgebraVector> derivs;
  if (xi0.is_zero()) {
    derivs = phi_recursion(used);
  } else {
    if (count > 3) {
      throw Error(ErrorCode::UnsupportedOrder,
                  "nonzero initial coordinates support at most 3 prescribed derivatives, got " +
                      std::to_string(count));
    }
    derivs = jet_pushforward(xi0, used, PushDirection::ToCoordinates);
  }
  for (int j = 1; j <= count; ++j) out.push_back(derivs[j - 1] / factorial(j));
  return out;
}

GroupElement start_pose(const TwoPointProblem& p) { return p.xi0 ? p.g0 * exp(*p.xi0) : p.g0; }

AlgebraVector relative_log(const GroupElement& g0, const GroupElement& g1) {
  require_same_group(g0.group(), g1.group(), "two-point poses");
  return log(g0.inverse() * g1);
}

}  // namespace

CoordinatePolynomial initial_value_polynomial(const AlgebraVector& xi0, const AlgebraVector& xi1, const Jet& jet0,
                                              int order) {
  if (order < 1 || order > kMaxSeriesOrder) {
    throw Error(ErrorCode::UnsupportedOrder, "initial-value order " + std::to_string(order));
  }
  require_same_group(xi0.group(), xi1.group(), "initial-value coordinates");
  require_entries(jet0, order - 1, "initial-value interpolation");
  std::vector<AlgebraVector> coeffs{xi0};
  for (const AlgebraVector& c : taylor_coefficients(xi0, jet0, order - 1)) coeffs.push_back(c);
  return CoordinatePolynomial::interpolating(std::move(coeffs), xi1);
}

CoordinatePolynomial boundary_value_polynomial(const AlgebraVector& xi0, const AlgebraVector& xi1, const Jet& jet0,
                                               const AlgebraVector& v1, int order) {
  if (order < 3 || order > 5) {
    throw Error(ErrorCode::UnsupportedOrder, "boundary-value order " + std::to_string(order) + " (3..5 supported)");
  }
  require_same_group(xi0.group(), xi1.group(), "boundary-value coordinates");
  require_same_group(xi1.group(), v1.group(), "terminal velocity");
  require_entries(jet0, order - 2, "boundary-value interpolation");
  // Hermite conditions: prescribed derivatives at 0, value and slope w at 1.
  const AlgebraVector w = dexp_inv(-xi1) * v1;
  std::vector<AlgebraVector> coeffs{xi0};
  AlgebraVector s0 = AlgebraVector::zero(xi0.group());
  AlgebraVector s1 = s0;
  int j = 1;
  for (const AlgebraVector& c : taylor_coefficients(xi0, jet0, order - 2)) {
    coeffs.push_back(c);
    s0 += c;
    s1 += static_cast<double>(j++) * c;
  }
  const AlgebraVector gap = xi1 - xi0 - s0;
  const AlgebraVector top = (w - s1) - static_cast<double>(order - 1) * gap;
  coeffs.push_back(gap - top);
  return CoordinatePolynomial::interpolating(std::move(coeffs), xi1);
}

CoordinatePolynomial initial_value_interp(const TwoPointProblem& p) {
  if (p.xi0 && !p.xi0->is_zero()) {
    throw Error(ErrorCode::InvalidArgument, "initial_value_interp expects xi0 = 0; use the nonzero variant");
  }
  const AlgebraVector xi1 = relative_log(p.g0, p.g1);
  return initial_value_polynomial(AlgebraVector::zero(xi1.group()), xi1, p.jet0, p.order);
}

CoordinatePolynomial boundary_value_interp(const TwoPointProblem& p) {
  if (p.xi0 && !p.xi0->is_zero()) {
    throw Error(ErrorCode::InvalidArgument, "boundary_value_interp expects xi0 = 0; use the nonzero variant");
  }
  if (!p.v1) throw Error(ErrorCode::MissingVelocities, "boundary-value interpolation needs v1");
  const AlgebraVector xi1 = relative_log(p.g0, p.g1);
  return boundary_value_polynomial(AlgebraVector::zero(xi1.group()), xi1, p.jet0, *p.v1, p.order);
}

CoordinatePolynomial initial_value_interp_nonzero(const TwoPointProblem& p) {
  const AlgebraVector xi1 = relative_log(p.g0, p.g1);
  const AlgebraVector xi0 = p.xi0.value_or(AlgebraVector::zero(xi1.group()));
  return initial_value_polynomial(xi0, xi1, p.jet0, p.order);
}

CoordinatePolynomial boundary_value_interp_nonzero(const TwoPointProblem& p) {
  if (!p.v1) throw Error(ErrorCode::MissingVelocities, "boundary-value interpolation needs v1");
  const AlgebraVector xi1 = relative_log(p.g0, p.g1);
  const AlgebraVector xi0 = p.xi0.value_or(AlgebraVector::zero(xi1.group()));
  return boundary_value_polynomial(xi0, xi1, p.jet0, *p.v1, p.order);
}

std::vector<AlgebraVector> jet_pushforward(const AlgebraVector& xi, const std::vector<AlgebraVector>& derivs,
                                           PushDirection direction) {
  const int s = static_cast<int>(derivs.size());
  if (s > 3) throw Error(ErrorCode::UnsupportedOrder, "jet pushforward handles at most 3 derivatives");
  std::vector<AlgebraVector> out;
  if (s == 0) return out;
  for (const AlgebraVector& d : derivs) require_same_group(xi.group(), d.group(), "jet pushforward");
  const AlgebraVector neg = -xi;
  const bool to_velocity = direction == PushDirection::ToVelocity;
  const OpMatrix M = to_velocity ? dexp(neg) : dexp_inv(neg);
  auto D = [&](const AlgebraVector& dir) { return to_velocity ? d_dexp(neg, dir) : d_dexp_inv(neg, dir); };
  auto D2 = [&](const AlgebraVector& a, const AlgebraVector& b) {
    return to_velocity ? d2_dexp(neg, a, b) : d2_dexp_inv(neg, a, b);
  };
  // out = M(tau) in(tau) with M(tau) = F(-xi(tau)); the xi-derivatives are either the
  // inputs (forward) or the outputs computed so far (inverse).
  const std::vector<AlgebraVector>& in = derivs;
  out.push_back(M * in[0]);
  const AlgebraVector x1 = to_velocity ? in[0] : out[0];
  if (s >= 2) out.push_back(M * in[1] - D(x1) * in[0]);
  if (s >= 3) {
    const AlgebraVector x2 = to_velocity ? in[1] : out[1];
    out.push_back(M * in[2] - 2.0 * (D(x1) * in[1]) - D(x2) * in[0] + D2(x1, x1) * in[0]);
  }
  return out;
}

Jet velocity_jet(const CoordinatePolynomial& xi, double tau, int count) {
  std::vector<AlgebraVector> derivs;
  for (int j = 1; j <= count; ++j) derivs.push_back(xi.eval(tau, j));
  return jet_pushforward(xi.eval(tau), derivs, PushDirection::ToVelocity);
}

AlgebraVector local_error_estimate(const TwoPointProblem& p, const Jet& jet_full) {
  require_entries(jet_full, p.order, "local error estimate");
  const AlgebraVector xi1 = relative_log(start_pose(p), p.g1);
  const std::vector<AlgebraVector> phi = phi_recursion(Jet(jet_full.begin(), jet_full.begin() + p.order));
  AlgebraVector err = xi1;
  for (int j = 1; j <= p.order; ++j) err -= phi[j - 1] / factorial(j);
  return err;
}

}  // namespace liespline
