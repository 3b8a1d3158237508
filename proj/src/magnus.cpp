#include "liespline/magnus.hpp"

#include <string>

#include "liespline/error.hpp"
#include "liespline/lie.hpp"

namespace liespline {
namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

void check_order(int k) {
  if (k < 1 || k > kMaxSeriesOrder) {
    throw Error(ErrorCode::UnsupportedOrder,
                "order " + std::to_string(k) + " outside 1.." + std::to_string(kMaxSeriesOrder));
  }
}

void check_jet(const Jet& jet) {
  for (const AlgebraVector& v : jet) require_same_group(jet.front().group(), v.group(), "velocity jet");
}

/// Phi_1..Phi_k where jet entries past jet.size() count as zero.
std::vector<AlgebraVector> recursion(const Jet& jet, int k, bool right_invariant) {
  const GroupTag group = jet.front().group();
  const AlgebraVector zero = AlgebraVector::zero(group);
  std::vector<AlgebraVector> phi;  // phi[i-1] = Phi_i
  std::vector<AlgebraVector> Y(1, zero);  // Y[i] = Phi_i / i!, Y[0] = 0
  phi.reserve(k);
  for (int n = 1; n <= k; ++n) {
    AlgebraVector acc = zero;
    for (int j = 1; j < n; ++j) {
      const int m = n - j;
      // W[r][l]: sum over compositions of r into l parts of ad_{Y_i1} ... ad_{Y_il} Phi_j.
      // Zero parts drop out because Y_0 = 0, so only positive parts are enumerated.
      std::vector<std::vector<AlgebraVector>> W(m + 1, std::vector<AlgebraVector>(m + 1, zero));
      W[0][0] = phi[j - 1];
      for (int l = 1; l <= m; ++l)
        for (int r = l; r <= m; ++r)
          for (int i = 1; i <= r - l + 1; ++i) W[r][l] += bracket(Y[i], W[r - i][l - 1]);
      AlgebraVector F = zero;
      for (int l = 1; l <= m; ++l) {
        const double sign = (right_invariant || l % 2 == 0) ? 1.0 : -1.0;
        F += (sign / factorial(l + 1)) * W[m][l];
      }
      acc += F / factorial(j - 1);
    }
    const AlgebraVector vd = n - 1 < static_cast<int>(jet.size()) ? jet[n - 1] : zero;
    phi.push_back(vd - factorial(n - 1) * acc);
    Y.push_back(phi.back() / factorial(n));
  }
  return phi;
}

}  // namespace

std::vector<AlgebraVector> phi_recursion(const Jet& jet, bool right_invariant) {
  const int k = static_cast<int>(jet.size());
  check_order(k);
  check_jet(jet);
  return recursion(jet, k, right_invariant);
}

std::vector<AlgebraVector> a_coefficients(const Jet& jet, int k) {
  if (k < 3) return {};
  check_order(k);
  if (static_cast<int>(jet.size()) < k - 1) {
    throw Error(ErrorCode::MissingVelocities,
                "a_" + std::to_string(k) + " needs " + std::to_string(k - 1) + " jet entries");
  }
  check_jet(jet);
  // a_r is the tau^r coefficient of sum Phi_j tau^j/j! minus v0^(r-1)/r!; Phi_r depends on
  // v0^(r-1) only through that linear term, so it can be zeroed beforehand.
  Jet truncated(jet.begin(), jet.begin() + (k - 1));
  const std::vector<AlgebraVector> phi = recursion(truncated, k, false);
  std::vector<AlgebraVector> a;
  for (int r = 3; r <= k; ++r) {
    AlgebraVector c = phi[r - 1];
    if (r - 1 < static_cast<int>(truncated.size())) c -= truncated[r - 1];
    a.push_back(c / factorial(r));
  }
  return a;
}

CoordinatePolynomial extrapolate(const Jet& jet, int k) {
  check_order(k);
  if (static_cast<int>(jet.size()) < k) {
    throw Error(ErrorCode::MissingVelocities,
                "extrapolation of order " + std::to_string(k) + " needs " + std::to_string(k) + " jet entries");
  }
  const std::vector<AlgebraVector> phi = phi_recursion(Jet(jet.begin(), jet.begin() + k));
  std::vector<AlgebraVector> coeffs{AlgebraVector::zero(jet.front().group())};
  for (int j = 1; j <= k; ++j) coeffs.push_back(phi[j - 1] / factorial(j));
  return CoordinatePolynomial(std::move(coeffs));
}

}  // namespace liespline
