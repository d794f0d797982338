#pragma once

// Coupled plasmon dispersion relation of a plasma/plasma/plasma stack in
// units w = omega / omega_p1, K = k c / omega_p1, u = w^2, A_j = (omega_pj /
// omega_p1)^2. Templated on the scalar so that complex-step derivatives can
// reuse the same expressions.

#include <cmath>
#include <complex>

namespace casimir::detail {

inline double real_part(double x) { return x; }
inline double real_part(const std::complex<double>& x) { return x.real(); }

inline double clamp_nonneg(double x) { return x < 0.0 ? 0.0 : x; }
inline std::complex<double> clamp_nonneg(const std::complex<double>& x) {
  return x.real() < 0.0 ? std::complex<double>(0.0, x.imag()) : x;
}

template <class T>
struct ResidualTerms {
  T t1;  // e2^2 q1 q3 S
  T t2;  // e2 (e3 q1 + e1 q3) C
  T t3;  // e1 e3 q2^2 S
  T sum() const { return t1 + t2 + t3; }
};

// P / (q2 cosh(q2 Lambda)) for an evanescent gap and P / (i p) with q2 = i p
// for a propagative gap. Neither form has a pole or a spurious root at q2 = 0.
// qsq[j] = K^2 - u + A_j, passed in so callers can supply exact values on a
// light line.
template <class T, class U>
ResidualTerms<T> residual_terms_q(T u, const T* qsq, U Lambda, const double* A) {
  using std::cos;
  using std::sin;
  using std::sqrt;
  using std::tanh;
  const T e1 = u - A[0];
  const T e2 = u - A[1];
  const T e3 = u - A[2];
  const T q1 = sqrt(clamp_nonneg(qsq[0]));
  const T q3 = sqrt(clamp_nonneg(qsq[2]));
  const T q2sq = qsq[1];
  ResidualTerms<T> r;
  if (real_part(q2sq) >= 0.0) {
    const T q2 = sqrt(q2sq);
    const auto th = tanh(q2 * Lambda);
    const auto S = (q2 == T(0.0)) ? T(Lambda) : T(th / q2);
    r.t1 = e2 * e2 * q1 * q3 * S;
    r.t2 = e2 * (e3 * q1 + e1 * q3);
    r.t3 = e1 * e3 * q2 * th;
  } else {
    const T p = sqrt(-q2sq);
    const auto sn = sin(p * Lambda);
    const auto cs = cos(p * Lambda);
    r.t1 = e2 * e2 * q1 * q3 * sn / p;
    r.t2 = e2 * (e3 * q1 + e1 * q3) * cs;
    r.t3 = -e1 * e3 * p * sn;
  }
  return r;
}

template <class T, class U>
ResidualTerms<T> residual_terms(T u, U Lambda, double K, const double* A) {
  const double K2 = K * K;
  const T qsq[3] = {K2 - u + A[0], K2 - u + A[1], K2 - u + A[2]};
  return residual_terms_q(u, qsq, Lambda, A);
}

// G = D1 D3 - delta N = q2 times the evanescent residual, where
// D_j = e2 q_j + e_j q2 vanishes on the single plasmon of interface j|2 and
// delta = 1 - tanh(q2 Lambda). Evanescent gap only.
template <class T>
struct GapFactors {
  T q1, q2, q3, e1, e2, e3, D1, D3, N, delta;
};

template <class T>
GapFactors<T> gap_factors(T u, double Lambda, double K, const double* A) {
  using std::exp;
  using std::sqrt;
  const double K2 = K * K;
  GapFactors<T> g;
  g.e1 = u - A[0];
  g.e2 = u - A[1];
  g.e3 = u - A[2];
  g.q1 = sqrt(clamp_nonneg(K2 - u + A[0]));
  g.q2 = sqrt(clamp_nonneg(K2 - u + A[1]));
  g.q3 = sqrt(clamp_nonneg(K2 - u + A[2]));
  g.D1 = g.e2 * g.q1 + g.e1 * g.q2;
  g.D3 = g.e2 * g.q3 + g.e3 * g.q2;
  g.N = g.e2 * g.e2 * g.q1 * g.q3 + g.e1 * g.e3 * g.q2 * g.q2;
  g.delta = 2.0 / (exp(2.0 * Lambda * g.q2) + 1.0);
  return g;
}

// Roots in u of (e2 q_i)^2 = (e_i q2)^2: the physical single plasmon s and
// the spurious partner s' above the light lines.
inline double single_u(double Ai, double A2, double K) {
  const double d = Ai - A2;
  const double K2 = K * K;
  const double den = 2.0 * K2 + std::sqrt(4.0 * K2 * K2 + d * d);
  return 0.5 * (Ai + A2 - (den > 0.0 ? d * d / den : 0.0));
}

inline double single_u_partner(double Ai, double A2, double K) {
  const double d = Ai - A2;
  const double K2 = K * K;
  return 0.5 * (Ai + A2) + K2 + 0.5 * std::sqrt(4.0 * K2 * K2 + d * d);
}

}  // namespace casimir::detail
