#include "casimir/lifshitz.hpp"

#include <algorithm>
#include <cmath>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"

namespace casimir {

using constants::c;
using constants::hbar;
using constants::pi;

double reflection_tm(double eps_i, double eps_2, double kappa_i, double kappa_2) {
  const double num = eps_2 * kappa_i - eps_i * kappa_2;
  const double den = eps_2 * kappa_i + eps_i * kappa_2;
  if (den == 0.0) throw DomainError("reflection_tm: vanishing denominator");
  return num / den;
}

double reflection_te(double kappa_i, double kappa_2) {
  const double den = kappa_i + kappa_2;
  if (den == 0.0) throw DomainError("reflection_te: vanishing denominator");
  return (kappa_2 - kappa_i) / den;
}

double perfect_mirror_force(double L) {
  if (!(L > 0.0)) throw DomainError("gap width must be > 0");
  return -hbar * c * pi * pi / (240.0 * L * L * L * L);
}

double perfect_mirror_energy(double L) {
  if (!(L > 0.0)) throw DomainError("gap width must be > 0");
  return -hbar * c * pi * pi / (720.0 * L * L * L);
}

namespace {

enum class Quantity { Force, Energy };

// Reflection coefficients of layer j written through eps_j - eps_2 so that
// identical media give exactly zero.
struct Reflection {
  double tm;
  double te;
};

Reflection reflect(double eps_j, double eps_2, double K2, double y) {
  const double d = eps_j - eps_2;
  if (d == 0.0) return {0.0, 0.0};
  const double y2 = y * y;
  const double kj = std::sqrt(K2 * K2 + d * y2);
  const double dk = d * y2 / (kj + K2);  // kj - K2
  const double te = -dk / (kj + K2);
  const double tm = (eps_2 * dk - d * K2) / (eps_2 * kj + eps_j * K2);
  return {tm, te};
}

// Dimensionless double integral over y = xi L / c and x = k L.
Estimate lifshitz_integral(const TriLayer& stack, const QuadratureConfig& cfg, Quantity q,
                           double floor_dimless) {
  stack.validate();
  cfg.validate();
  const double L = stack.gap;
  const double ws = std::max({characteristic_frequency(stack.body1),
                              characteristic_frequency(stack.gap_medium),
                              characteristic_frequency(stack.body3)});
  const double sy = ws > 0.0 ? std::min(1.0, ws * L / c) : 1.0;

  QuadratureConfig inner_cfg = cfg;
  inner_cfg.rel_tol = std::max(1e-13, 1e-2 * cfg.rel_tol);
  inner_cfg.abs_floor = 0.0;
  inner_cfg.compression_scale = 0.5;

  QuadratureConfig outer_cfg = cfg;
  outer_cfg.abs_floor = floor_dimless;
  outer_cfg.compression_scale = sy;

  auto outer = [&](double y) -> double {
    if (y <= 0.0) return 0.0;
    const double xi = y * c / L;
    const double e1 = eps_imag(stack.body1, xi);
    const double e2 = eps_imag(stack.gap_medium, xi);
    const double e3 = eps_imag(stack.body3, xi);
    if (e1 == e2 || e3 == e2) return 0.0;
    const double kmin = std::sqrt(e2) * y;
    // s = K2 - kmin, so that x dx = K2 ds
    auto inner = [&](double s) -> double {
      const double K2 = kmin + s;
      const double ex = std::exp(-2.0 * K2);
      if (ex == 0.0) return 0.0;
      const Reflection r1 = reflect(e1, e2, K2, y);
      const Reflection r3 = reflect(e3, e2, K2, y);
      const double rtm = r1.tm * r3.tm * ex;
      const double rte = r1.te * r3.te * ex;
      if (q == Quantity::Force) return K2 * K2 * (rtm / (1.0 - rtm) + rte / (1.0 - rte));
      return K2 * (std::log1p(-rtm) + std::log1p(-rte));
    };
    return integrate_semi_infinite(inner, 0.0, inner_cfg).value;
  };

  Estimate r = integrate_semi_infinite(outer, 0.0, outer_cfg);
  r.error += inner_cfg.rel_tol * std::abs(r.value);
  return r;
}

}  // namespace

Estimate lifshitz_pressure(const TriLayer& stack, const QuadratureConfig& cfg) {
  const double L = stack.gap;
  if (!(L > 0.0)) throw DomainError("gap width must be > 0");
  const double scale = -hbar * c / (2.0 * pi * pi * L * L * L * L);
  const Estimate I = lifshitz_integral(stack, cfg, Quantity::Force, cfg.abs_floor / std::abs(scale));
  return {scale * I.value, std::abs(scale) * I.error};
}

Estimate lifshitz_energy(const TriLayer& stack, const QuadratureConfig& cfg) {
  const double L = stack.gap;
  if (!(L > 0.0)) throw DomainError("gap width must be > 0");
  const double scale = hbar * c / (4.0 * pi * pi * L * L * L);
  const Estimate I = lifshitz_integral(stack, cfg, Quantity::Energy, cfg.abs_floor / scale);
  return {scale * I.value, scale * I.error};
}

ForceResult lifshitz_force(const TriLayer& stack, const QuadratureConfig& cfg) {
  const Estimate f = lifshitz_pressure(stack, cfg);
  const Estimate e = lifshitz_energy(stack, cfg);
  ForceResult r;
  r.force = f.value;
  r.force_error = f.error;
  r.energy = e.value;
  r.energy_error = e.error;
  r.eta_force = f.value / perfect_mirror_force(stack.gap);
  r.eta_energy = e.value / perfect_mirror_energy(stack.gap);
  return r;
}

double long_distance_estimate(const TriLayer& stack, double L) {
  validate(stack.body1);
  validate(stack.gap_medium);
  validate(stack.body3);
  if (!(L > 0.0) || !std::isfinite(L)) throw DomainError("gap width must be finite and > 0");
  const double e2 = static_permittivity(stack.gap_medium);
  if (!std::isfinite(e2))
    throw StaticPermittivityError("gap medium has a divergent static permittivity");
  auto r0 = [e2](const DielectricModel& m) {
    const double ej = static_permittivity(m);
    if (!std::isfinite(ej)) return -1.0;
    return (std::sqrt(e2) - std::sqrt(ej)) / (std::sqrt(e2) + std::sqrt(ej));
  };
  const double R = r0(stack.body1) * r0(stack.body3);
  return -3.0 * hbar * c * polylog(4, R) / (8.0 * pi * pi * std::sqrt(e2) * L * L * L * L);
}

}  // namespace casimir
