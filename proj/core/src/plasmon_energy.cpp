#include "casimir/plasmon_energy.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "casimir/constants.hpp"
#include "casimir/dielectric.hpp"
#include "casimir/errors.hpp"
#include "casimir/lifshitz.hpp"
#include "dispersion_terms.hpp"

namespace casimir {

using constants::c;
using constants::hbar;
using constants::pi;

namespace {

struct YParts {
  double g;
  double a_lo;
  double a_hi;
};

// g = sqrt(s) - |d| written without cancellation, s = d^2 + t.
YParts y_parts(double alpha, double beta, double k) {
  const double a2 = alpha * alpha;
  const double b2 = beta * beta;
  const double d = 1.0 - b2;
  const double t = 4.0 * (1.0 - a2) * (b2 - a2) * std::exp(-k);
  const double s = d * d + t;
  const double den = std::sqrt(std::max(s, 0.0)) + std::abs(d);
  const double g = den > 0.0 ? t / den : 0.0;
  const double x = std::sqrt(2.0) * std::sqrt(1.0 + a2);
  const double y = std::sqrt(2.0) * std::sqrt(a2 + b2);
  return {g, std::min(x, y), std::max(x, y)};
}

void require_ratios(double alpha, double beta) {
  if (!(alpha > 0.0) || !(beta > 0.0) || !std::isfinite(alpha) || !std::isfinite(beta))
    throw DomainError("alpha and beta must be finite and > 0");
}

}  // namespace

PsiPair psi_pair(double alpha, double beta, double k) {
  require_ratios(alpha, beta);
  if (!(k >= 0.0)) throw DomainError("k must be >= 0");
  const YParts p = y_parts(alpha, beta, k);
  return {std::sqrt(std::max(p.a_lo * p.a_lo - p.g, 0.0)), std::sqrt(p.a_hi * p.a_hi + p.g)};
}

Estimate y_integral(double alpha, double beta, const QuadratureConfig& cfg) {
  require_ratios(alpha, beta);
  auto f = [&](double k) {
    const YParts p = y_parts(alpha, beta, k);
    if (p.g == 0.0) return 0.0;
    const double lo = std::sqrt(std::max(p.a_lo * p.a_lo - p.g, 0.0));
    const double hi = std::sqrt(p.a_hi * p.a_hi + p.g);
    return k * p.g * (1.0 / (hi + p.a_hi) - 1.0 / (lo + p.a_lo));
  };
  QuadratureConfig q = cfg;
  q.abs_floor = 0.0;
  q.compression_scale = 2.0;
  return integrate_semi_infinite(f, 0.0, q);
}

double plasmon_energy_short(const PlasmaTriple& p) {
  p.validate();
  const double Y = y_integral(p.alpha(), p.beta()).value;
  return hbar * p.omega_p1 * Y / (32.0 * pi * p.gap * p.gap);
}

double short_distance_slope(double alpha, double beta) {
  return -30.0 * y_integral(alpha, beta).value / (pi * pi);
}

//****************************************************************************
// k route

namespace {

double energy_prefactor(const PlasmaTriple& p) {
  return hbar * p.omega_p1 * p.omega_p1 * p.omega_p1 / (4.0 * pi * c * c);
}

QuadratureConfig k_config(const QuadratureConfig& cfg, double Lambda) {
  QuadratureConfig q = cfg;
  q.abs_floor = 0.0;
  q.compression_scale = std::max(1.0, 0.5 / Lambda);
  return q;
}

CoupledModeSolver::Offset branch_offset(const CoupledModeSolver& s, Branch b, double K) {
  if (auto o = s.offset(b, K)) return *o;
  // the branch leaves the window top at its onset; closer to it than the scan
  // resolves, the root is the window top itself
  const double K0 = s.onset(b);
  if (K - K0 <= 1e-6 * std::max(1.0, K0)) {
    CoupledModeSolver::Offset o;
    o.interface = s.paired_interface(b);
    o.single = s.single(o.interface, K);
    o.w = s.window_top(K);
    o.delta = o.w - o.single;
    return o;
  }
  throw SolverError(std::string("no ") + (b == Branch::Minus ? "omega_minus" : "omega_plus") +
                        " root at K = " + std::to_string(K),
                    K, 0.0, s.window_top(K));
}

}  // namespace

BranchPair plasmon_energy(const PlasmaTriple& p, const QuadratureConfig& cfg, const RootConfig& roots) {
  p.validate();
  const CoupledModeSolver s(p, roots);
  const QuadratureConfig q = k_config(cfg, s.Lambda());
  const double pref = energy_prefactor(p);
  BranchPair out;
  for (Branch b : {Branch::Minus, Branch::Plus}) {
    const double K0 = s.onset(b);
    if (!std::isfinite(K0)) continue;
    auto f = [&](double K) { return K * branch_offset(s, b, K).delta; };
    const Estimate e = integrate_semi_infinite(f, K0, q);
    (b == Branch::Minus ? out.minus : out.plus) = Estimate{pref * e.value, pref * e.error};
  }
  return out;
}

BranchPair plasmon_force(const PlasmaTriple& p, const QuadratureConfig& cfg, const RootConfig& roots) {
  p.validate();
  const CoupledModeSolver s(p, roots);
  const QuadratureConfig q = k_config(cfg, s.Lambda());
  const double pref = energy_prefactor(p);
  const double Lam = s.Lambda();
  const double A[3] = {s.A(1), s.A(2), s.A(3)};
  BranchPair out;
  for (Branch b : {Branch::Minus, Branch::Plus}) {
    const double K0 = s.onset(b);
    if (!std::isfinite(K0)) continue;
    auto f = [&](double K) {
      const auto o = branch_offset(s, b, K);
      return K * s.dw_dLambda(K, o.w);
    };
    Estimate dE = integrate_semi_infinite(f, K0, q);
    if (K0 > 0.0) {
      // moving lower limit: the onset sits where the residual vanishes on the
      // window top, so dK0/dLambda follows from implicit differentiation.
      // On the light line of the lighter body q_j^2 = A_j - A_min exactly.
      const double amin = std::min(A[0], A[2]);
      const double amax2 = std::max({A[0], A[1], A[2]});
      const bool on_light_line = K0 * K0 + amin < amax2;
      auto edge = [&](std::complex<double> K, std::complex<double> L) {
        std::complex<double> u, qsq[3];
        if (on_light_line) {
          u = K * K + amin;
          for (int j = 0; j < 3; ++j) qsq[j] = A[j] - amin;
        } else {
          u = amax2;
          for (int j = 0; j < 3; ++j) qsq[j] = K * K - u + A[j];
        }
        return detail::residual_terms_q(u, qsq, L, A).sum();
      };
      const double hL = 1e-20 * std::max(Lam, 1.0), hK = 1e-20 * K0;
      const double R_L = edge(K0, std::complex<double>(Lam, hL)).imag() / hL;
      const double R_K = edge(std::complex<double>(K0, hK), Lam).imag() / hK;
      const double dK0 = -R_L / R_K;
      const double delta0 = s.window_top(K0) - s.single(s.paired_interface(b), K0);
      dE.value -= K0 * delta0 * dK0;
    }
    // F = -dE/dL = -(omega_p1 / c) dE/dLambda
    const double scale = -pref * p.omega_p1 / c;
    (b == Branch::Minus ? out.minus : out.plus) = Estimate{scale * dE.value, std::abs(scale) * dE.error};
  }
  return out;
}

//****************************************************************************
// Q route: at fixed Q^2 = K^2 - w^2 every q_j is fixed and the dispersion
// relation D1 D3 = delta N is a quadratic in u = w^2.

namespace {

struct QPoint {
  double q[3];
  double delta;
  double u_single[3];  // single-interface plasmon of 1|2 and 3|2 at this Q^2
};

QPoint q_point(const double* A, double Lambda, double Q2) {
  QPoint p{};
  for (int j = 0; j < 3; ++j) p.q[j] = std::sqrt(std::max(Q2 + A[j], 0.0));
  p.delta = 2.0 / (std::exp(2.0 * Lambda * p.q[1]) + 1.0);
  for (int j : {0, 2}) {
    const double den = p.q[j] + p.q[1];
    p.u_single[j] = den > 0.0 ? (A[1] * p.q[j] + A[j] * p.q[1]) / den : A[1];
  }
  p.u_single[1] = 0.0;
  return p;
}

// Both roots of the quadratic written around u_single[i] as x = u - u_i,
// the small one first.
std::pair<double, double> q_roots_about(const double* A, const QPoint& p, int i) {
  const int j = i == 0 ? 2 : 0;
  const double q1 = p.q[0];
  const double q2 = p.q[1];
  const double q3 = p.q[2];
  const double ui = p.u_single[i];
  const double uj = p.u_single[j];
  const double P = (q1 + q2) * (q3 + q2);
  const double n0 = (ui - A[1]) * (ui - A[1]) * q1 * q3 + (ui - A[0]) * (ui - A[2]) * q2 * q2;
  const double n1 = 2.0 * (ui - A[1]) * q1 * q3 + (2.0 * ui - A[0] - A[2]) * q2 * q2;
  const double n2 = q1 * q3 + q2 * q2;
  const double a = P - p.delta * n2;
  const double b = P * (ui - uj) - p.delta * n1;
  const double cc = -p.delta * n0;
  const double disc = b * b - 4.0 * a * cc;
  if (disc < 0.0) throw SolverError("complex branch roots in the Q parametrisation", 0.0, 0.0, 0.0);
  const double qq = -0.5 * (b + std::copysign(std::sqrt(disc), b));
  const double small = qq != 0.0 ? cc / qq : 0.0;
  const double big = qq / a;
  return {small, big};
}

// Offsets of the lower and upper branch from the single plasmons they pair
// with, in u.
struct QOffsets {
  double lower_u;
  double lower_single;
  double upper_u;
  double upper_single;
};

QOffsets q_offsets(const double* A, const QPoint& p, int i_lo, int i_hi) {
  const auto [xs_lo, xb_lo] = q_roots_about(A, p, i_lo);
  const auto [xs_hi, xb_hi] = q_roots_about(A, p, i_hi);
  const double r_lo = p.u_single[i_lo] + xs_lo;
  const double r_hi = p.u_single[i_hi] + xs_hi;
  QOffsets o{};
  o.lower_single = p.u_single[i_lo];
  o.upper_single = p.u_single[i_hi];
  if (r_lo < r_hi && std::abs(r_hi - r_lo) > 1e-9 * std::max(r_lo, r_hi)) {
    o.lower_u = xs_lo;
    o.upper_u = xs_hi;
  } else {
    // strong coupling: both small roots are the same one
    const double a = p.u_single[i_lo] + xs_lo;
    const double b = p.u_single[i_lo] + xb_lo;
    o.lower_u = std::min(a, b) - o.lower_single;
    o.upper_u = std::max(a, b) - o.upper_single;
  }
  return o;
}

double w_offset(double x, double u_single) {
  return x / (std::sqrt(u_single + x) + std::sqrt(u_single));
}

}  // namespace

BranchPair plasmon_energy_q_route(const PlasmaTriple& p, const QuadratureConfig& cfg) {
  p.validate();
  const double A[3] = {1.0, p.alpha() * p.alpha(), p.beta() * p.beta()};
  const double Lam = p.Lambda();
  if (A[0] == A[2]) throw DomainError("Q route needs distinct body plasma frequencies");
  const int m = A[0] < A[2] ? 0 : 2;  // lighter body, carries the omega_minus branch
  const int o = 2 - m;
  if (!(A[1] > A[m])) throw DomainError("Q route needs an evanescent gap on both branches");

  const QuadratureConfig q = k_config(cfg, Lam);
  const double pref = energy_prefactor(p);

  // Q^2 = s^2 - A_m, dQ^2 = 2 s ds
  auto lower = [&](double s) {
    const QPoint pt = q_point(A, Lam, s * s - A[m]);
    const QOffsets off = q_offsets(A, pt, m, o);
    return s * w_offset(off.lower_u, off.lower_single);
  };
  auto upper = [&](double s) {
    const QPoint pt = q_point(A, Lam, s * s - A[m]);
    const QOffsets off = q_offsets(A, pt, m, o);
    return s * w_offset(off.upper_u, off.upper_single);
  };
  const Estimate El = integrate_semi_infinite(lower, 0.0, q);
  const Estimate Eu = integrate_semi_infinite(upper, 0.0, q);

  // onset of the upper branch on Q^2 = Q0 = -A_m. The single plasmon with the
  // same K sits at Q0 + D, where D solves D = x - (u_o(Q0 + D) - u_o(Q0)) and
  // x is the offset of the branch root from u_o(Q0).
  const double Q0 = -A[m];
  const QPoint edge = q_point(A, Lam, Q0);
  const QOffsets eo = q_offsets(A, edge, m, o);
  const double x = eo.upper_u;
  const double u0 = eo.upper_single;
  auto u_o = [&](double Q2) { return q_point(A, Lam, Q2).u_single[o]; };
  auto du_o = [&](double Q2) {
    const QPoint pt = q_point(A, Lam, Q2);
    const double qo = pt.q[o];
    const double q2 = pt.q[1];
    const double num = A[1] * qo + A[o] * q2;
    const double den = qo + q2;
    const double dnum = 0.5 * (A[1] / qo + A[o] / q2);
    const double dden = 0.5 * (1.0 / qo + 1.0 / q2);
    return (dnum * den - num * dden) / (den * den);
  };
  auto shift = [&](double D) {
    return std::abs(D) < 1e-5 ? du_o(Q0 + 0.5 * D) * D : u_o(Q0 + D) - u0;
  };
  double D = x;
  if (std::abs(x) < 1e-6) {
    for (int it = 0; it < 50; ++it) {
      const double step = (D + shift(D) - x) / (1.0 + du_o(Q0 + D));
      D -= step;
      if (std::abs(step) <= 1e-15 * std::abs(D)) break;
    }
  } else {
    // the single plasmon stays gap-evanescent, Q0 + D >= -A_2
    auto phi = [&](double d) { return d + shift(d) - x; };
    const double lo = -(A[1] - A[m]);
    double hi = 2.0 * std::max(std::abs(x), 1.0);
    while (phi(hi) < 0.0) hi *= 2.0;
    RootConfig rc;
    rc.rel_tol = 1e-15;
    D = find_root_bracketed(phi, lo, hi, rc).value;
  }
  const double u_sp = u0 + shift(D);
  const double u_x = u0 + x;
  // 1/2 int_{Q0}^{Q0+D} w_sp dQ^2 - (w_x^3 - w_sp^3) / 3, which cancels at
  // first order in D
  double boundary = 0.0;
  Estimate mid{0.0, 0.0};
  if (std::abs(D) < 1e-5) {
    const double w = std::sqrt(u_sp);
    const double dw = du_o(Q0 + 0.5 * D) / (2.0 * w);
    boundary = -D * D * (0.25 * dw + 0.125 / w);
  } else {
    auto single_w = [&](double Q2) { return std::sqrt(u_o(Q2)); };
    QuadratureConfig qi = cfg;
    qi.abs_floor = 0.0;
    mid = integrate_interval(single_w, Q0, Q0 + D, qi);
    boundary = 0.5 * mid.value - (u_x * std::sqrt(u_x) - u_sp * std::sqrt(u_sp)) / 3.0;
  }

  BranchPair out;
  out.minus = {pref * El.value, pref * El.error};
  out.plus = {pref * (Eu.value + boundary), pref * (Eu.error + 0.5 * mid.error)};
  return out;
}

//****************************************************************************

EnergyBreakdown energy_breakdown(const PlasmaTriple& p, const QuadratureConfig& cfg,
                                 const RootConfig& roots) {
  p.validate();
  const TriLayer stack{Plasma{p.omega_p1}, Plasma{p.omega_p2}, Plasma{p.omega_p3}, p.gap};
  QuadratureConfig lc = cfg;
  lc.abs_floor = 0.0;
  const Estimate total = lifshitz_energy(stack, lc);
  const BranchPair sp = plasmon_energy(p, cfg, roots);
  const double Ec = perfect_mirror_energy(p.gap);

  EnergyBreakdown b;
  b.gap = p.gap;
  b.Lambda = p.Lambda();
  b.total = total.value;
  b.plasmon_minus = sp.minus.value;
  b.plasmon_plus = sp.plus.value;
  b.plasmon = sp.total();
  b.photon = b.total - b.plasmon;
  b.eta_total = b.total / Ec;
  b.eta_plasmon_minus = b.plasmon_minus / Ec;
  b.eta_plasmon_plus = b.plasmon_plus / Ec;
  b.eta_plasmon = b.plasmon / Ec;
  b.eta_photon = b.photon / Ec;
  return b;
}

}  // namespace casimir
