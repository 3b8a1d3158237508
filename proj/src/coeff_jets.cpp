#include "coeff_jets.hpp"

#include <cmath>
#include <numbers>

#include "liespline/group.hpp"

namespace liespline::detail {
namespace {

constexpr int kSeriesTerms = 32;
// Below this s the power series are used; above, closed forms in jet arithmetic.
constexpr double kSeriesSwitch = 1.0;

/// Truncated Taylor polynomial in h = s - s0.
struct Taylor {
  CoeffJet c{};
};

Taylor constant(double v) {
  Taylor t;
  t.c[0] = v;
  return t;
}

Taylor operator+(const Taylor& a, const Taylor& b) {
  Taylor r;
  for (int i = 0; i <= kJetOrder; ++i) r.c[i] = a.c[i] + b.c[i];
  return r;
}

Taylor operator-(const Taylor& a, const Taylor& b) {
  Taylor r;
  for (int i = 0; i <= kJetOrder; ++i) r.c[i] = a.c[i] - b.c[i];
  return r;
}

Taylor operator*(const Taylor& a, const Taylor& b) {
  Taylor r;
  for (int k = 0; k <= kJetOrder; ++k)
    for (int i = 0; i <= k; ++i) r.c[k] += a.c[i] * b.c[k - i];
  return r;
}

Taylor operator*(double s, Taylor a) {
  for (double& v : a.c) v *= s;
  return a;
}

Taylor operator/(const Taylor& a, const Taylor& b) {
  Taylor q;
  for (int k = 0; k <= kJetOrder; ++k) {
    double acc = a.c[k];
    for (int i = 1; i <= k; ++i) acc -= b.c[i] * q.c[k - i];
    q.c[k] = acc / b.c[0];
  }
  return q;
}

/// Composes an outer function, given by its Taylor coefficients at x.c[0], with x.
Taylor compose(const CoeffJet& outer, const Taylor& x) {
  Taylor h = x;
  h.c[0] = 0.0;
  Taylor result = constant(outer[0]);
  Taylor power = constant(1.0);
  for (int j = 1; j <= kJetOrder; ++j) {
    power = power * h;
    result = result + outer[j] * power;
  }
  return result;
}

Taylor sqrt_t(const Taylor& x) {
  const double s = x.c[0];
  const double r = std::sqrt(s);
  return compose({r, 0.5 / r, -0.125 / (s * r), 0.0625 / (s * s * r)}, x);
}

Taylor sin_t(const Taylor& x) {
  const double sv = std::sin(x.c[0]), cv = std::cos(x.c[0]);
  return compose({sv, cv, -sv / 2.0, -cv / 6.0}, x);
}

Taylor cos_t(const Taylor& x) {
  const double sv = std::sin(x.c[0]), cv = std::cos(x.c[0]);
  return compose({cv, -sv, -cv / 2.0, sv / 6.0}, x);
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Taylor coefficients at s0 of sum_n a[n] s^n.
CoeffJet series_jet(const std::array<double, kSeriesTerms>& a, double s0) {
  CoeffJet out{};
  for (int j = 0; j <= kJetOrder; ++j) {
    double acc = 0.0;
    for (int n = kSeriesTerms - 1; n >= j; --n) acc = acc * s0 + binomial(n, j) * a[n];
    out[j] = acc;
  }
  return out;
}

struct SeriesTables {
  std::array<double, kSeriesTerms> half_beta{};   // sum (-s)^n/(2n+2)!
  std::array<double, kSeriesTerms> delta{};       // sum (-s)^n/(2n+3)!
  std::array<double, kSeriesTerms> inv_k2{};      // sum 2 zeta(2n+2) s^n/(2 pi)^(2n+2)

  SeriesTables() {
    double fact = 2.0;  // (2n+2)!
    for (int n = 0; n < kSeriesTerms; ++n) {
      const double sign = (n % 2 == 0) ? 1.0 : -1.0;
      half_beta[n] = sign / fact;
      delta[n] = sign / (fact * (2 * n + 3));
      fact *= (2 * n + 3) * (2 * n + 4);
    }
    const double two_pi_sq = 4.0 * std::numbers::pi * std::numbers::pi;
    double scale = 1.0 / two_pi_sq;
    for (int n = 0; n < kSeriesTerms; ++n) {
      inv_k2[n] = 2.0 * std::riemann_zeta(2.0 * n + 2.0) * scale;
      scale /= two_pi_sq;
    }
  }
};

const SeriesTables& tables() {
  static const SeriesTables t;
  return t;
}

Taylor s_variable(double s) {
  Taylor t;
  t.c[0] = s;
  t.c[1] = 1.0;
  return t;
}

}  // namespace

FamilyCoeffs dexp_family(double s) {
  if (s < kSeriesSwitch) return {series_jet(tables().half_beta, s), series_jet(tables().delta, s)};
  const Taylor S = s_variable(s);
  const Taylor phi = sqrt_t(S);
  const Taylor one = constant(1.0);
  const Taylor k1 = (one - cos_t(phi)) / S;
  const Taylor k2 = (phi - sin_t(phi)) / (phi * S);
  return {k1.c, k2.c};
}

FamilyCoeffs dexp_inv_family(double s) {
  CoeffJet k1{};
  k1[0] = -0.5;
  if (s < kSeriesSwitch) return {k1, series_jet(tables().inv_k2, s)};
  const Taylor S = s_variable(s);
  const Taylor half = 0.5 * sqrt_t(S);
  const Taylor gamma = half * cos_t(half) / sin_t(half);
  const Taylor k2 = (constant(1.0) - gamma) / S;
  return {k1, k2.c};
}

namespace {

constexpr int kMaxMasks = 8;

template <typename T>
using NilArray = std::array<T, kMaxMasks>;

/// Product in the algebra generated by nilpotent e_i (e_i^2 = 0), components indexed by bitmask.
template <typename A, typename B, typename R>
void nil_multiply(const NilArray<A>& a, const NilArray<B>& b, NilArray<R>& out, int masks) {
  for (int m = 0; m < masks; ++m) {
    R acc = a[0] * b[m];
    for (int sub = m; sub > 0; sub = (sub - 1) & m) acc += a[sub] * b[m ^ sub];
    out[m] = acc;
  }
}

}  // namespace

Eigen::Matrix3d family_derivative(const FamilyCoeffs& coeffs, const Eigen::Vector3d& x,
                                  std::span<const Eigen::Vector3d> dirs) {
  const int m = static_cast<int>(dirs.size());
  const int masks = 1 << m;

  NilArray<Eigen::Vector3d> X;
  X.fill(Eigen::Vector3d::Zero());
  X[0] = x;
  for (int i = 0; i < m; ++i) X[1 << i] = dirs[i];

  // s = X . X
  NilArray<double> S{};
  for (int k = 0; k < masks; ++k) {
    double acc = X[0].dot(X[k]);
    for (int sub = k; sub > 0; sub = (sub - 1) & k) acc += X[sub].dot(X[k ^ sub]);
    S[k] = acc;
  }

  // k(S) = sum_j k_j (S - s0)^j
  NilArray<double> dS = S;
  dS[0] = 0.0;
  NilArray<double> power{};
  power[0] = 1.0;
  NilArray<double> K1{}, K2{};
  for (int k = 0; k < masks; ++k) {
    K1[k] = coeffs.k1[0] * power[k];
    K2[k] = coeffs.k2[0] * power[k];
  }
  for (int j = 1; j <= m; ++j) {
    NilArray<double> next{};
    nil_multiply(power, dS, next, masks);
    power = next;
    for (int k = 0; k < masks; ++k) {
      K1[k] += coeffs.k1[j] * power[k];
      K2[k] += coeffs.k2[j] * power[k];
    }
  }

  NilArray<Eigen::Matrix3d> Xh, Xh2;
  for (int k = 0; k < masks; ++k) Xh[k] = skew(X[k]);
  nil_multiply(Xh, Xh, Xh2, masks);

  NilArray<Eigen::Matrix3d> t1, t2;
  nil_multiply(K1, Xh, t1, masks);
  nil_multiply(K2, Xh2, t2, masks);
  const int top = masks - 1;
  Eigen::Matrix3d result = t1[top] + t2[top];
  if (m == 0) result += Eigen::Matrix3d::Identity();
  return result;
}

}  // namespace liespline::detail
