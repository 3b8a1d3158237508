#pragma once

// Independent reference computations used by the tests. None of these call
// into the closed forms they are compared against.

#include <Eigen/Dense>
#include <functional>
#include <random>
#include <vector>

#include "liespline/group.hpp"

namespace oracle {

using liespline::AlgebraVector;
using liespline::GroupElement;
using liespline::GroupTag;
using liespline::OpMatrix;

/// Matrix exponential by scaling and squaring with a long Taylor series.
Eigen::MatrixXd expm(const Eigen::MatrixXd& A);

/// exp via expm of the matrix representation.
GroupElement group_exp(const AlgebraVector& a);

/// ad matrix built from brackets of basis vectors.
OpMatrix ad_from_brackets(const AlgebraVector& a);

/// Bernoulli numbers B_0..B_n with B_1 = -1/2.
std::vector<double> bernoulli_numbers(int n);

/// sum_i B_i/i! ad_a^i, truncated after `terms` terms.
OpMatrix dexp_inv_series(const AlgebraVector& a, int terms = 40);
/// sum_i ad_a^i/(i+1)!.
OpMatrix dexp_series(const AlgebraVector& a, int terms = 40);

/// Central difference of a matrix-valued function along `dir`.
OpMatrix central_difference(const std::function<OpMatrix(const AlgebraVector&)>& f, const AlgebraVector& a,
                            const AlgebraVector& dir, double h);

/// Right-trivialized differential of exp measured by finite differences of expm.
OpMatrix dexp_by_differences(const AlgebraVector& a, double h = 1e-5);

/// Classical RK4 on g' = g v(tau) in matrix form, starting at g0, over [0, 1].
GroupElement integrate_poisson(const GroupElement& g0, const std::function<AlgebraVector(double)>& v, int steps);

/// log of the Poisson solution over [0, T] for the velocity field sum_j jet[j] tau^j / j!.
AlgebraVector jet_motion_coordinates(const std::vector<AlgebraVector>& jet, double T, int steps = 400);

/// Scalar De Casteljau.
double decasteljau(const std::vector<double>& control, double t);

/// Random algebra vector with rotational norm <= max_rot and translational norm <= max_trans.
AlgebraVector random_algebra(std::mt19937_64& rng, GroupTag group, double max_rot, double max_trans = 1.0);

GroupElement random_element(std::mt19937_64& rng, GroupTag group, double max_rot = 2.5);

double max_abs(const OpMatrix& m);

}  // namespace oracle
