#pragma once

#include <optional>
#include <vector>

#include "liespline/group.hpp"
#include "liespline/polynomial.hpp"

namespace liespline {

/// Two-point interpolation data on tau in [0, 1].
struct TwoPointProblem {
  GroupElement g0;  ///< start pose, or the carrier when xi0 is set
  GroupElement g1;
  Jet jet0;         ///< v0, v0', ... at tau = 0
  std::optional<AlgebraVector> v1;   ///< terminal velocity (boundary-value mode)
  std::optional<AlgebraVector> xi0;  ///< initial coordinates (nonzero-initial variants)
  int order = 3;
};

/// Initial-value interpolant with xi(0) = 0 and xi(1) = log(g0^-1 g1). Needs order - 1 jet entries.
CoordinatePolynomial initial_value_interp(const TwoPointProblem& p);

/// Boundary-value interpolant (orders 3..5). Needs order - 2 jet entries and v1.
CoordinatePolynomial boundary_value_interp(const TwoPointProblem& p);

/// As initial_value_interp with xi(0) = xi0 and carrier g0, i.e. the curve is g0 exp xi(tau).
CoordinatePolynomial initial_value_interp_nonzero(const TwoPointProblem& p);
CoordinatePolynomial boundary_value_interp_nonzero(const TwoPointProblem& p);

/// Coordinate-level forms used by the spline builders: xi(0) = xi0, xi(1) = xi1.
CoordinatePolynomial initial_value_polynomial(const AlgebraVector& xi0, const AlgebraVector& xi1, const Jet& jet0,
                                              int order);
CoordinatePolynomial boundary_value_polynomial(const AlgebraVector& xi0, const AlgebraVector& xi1, const Jet& jet0,
                                               const AlgebraVector& v1, int order);

enum class PushDirection {
  ToVelocity,     ///< [xi', xi'', xi'''] -> [v, v', v'']
  ToCoordinates,  ///< [v, v', v''] -> [xi', xi'', xi''']
};

/// Converts derivative jets through v = dexp_{-xi} xi'. Handles up to 3 entries.
std::vector<AlgebraVector> jet_pushforward(const AlgebraVector& xi, const std::vector<AlgebraVector>& derivs,
                                           PushDirection direction);

/// Velocity jet [v, v', ...] (count entries, count <= 3) of g exp xi(tau) at tau.
Jet velocity_jet(const CoordinatePolynomial& xi, double tau, int count);

/// Leading tau^k coefficient of the initial-value interpolation error. Needs order entries in jet_full.
AlgebraVector local_error_estimate(const TwoPointProblem& p, const Jet& jet_full);

}  // namespace liespline
