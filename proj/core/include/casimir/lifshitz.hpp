#pragma once

#include "casimir/dielectric.hpp"
#include "casimir/numerics.hpp"

namespace casimir {

// Fresnel coefficients at imaginary frequency, layer i seen from the gap.
double reflection_tm(double eps_i, double eps_2, double kappa_i, double kappa_2);
double reflection_te(double kappa_i, double kappa_2);

// Ideal-mirror references. Negative means attractive.
double perfect_mirror_force(double L);   // -hbar c pi^2 / (240 L^4), N/m^2
double perfect_mirror_energy(double L);  // -hbar c pi^2 / (720 L^3), J/m^2

struct ForceResult {
  double force = 0.0;   // N/m^2, negative is attractive
  double energy = 0.0;  // J/m^2
  double eta_force = 0.0;   // force / perfect_mirror_force
  double eta_energy = 0.0;  // energy / perfect_mirror_energy
  double force_error = 0.0;
  double energy_error = 0.0;
};

// Zero-temperature Lifshitz pressure and interaction energy per unit area.
// cfg.abs_floor is read in N/m^2 for the force and J/m^2 for the energy.
Estimate lifshitz_pressure(const TriLayer& stack, const QuadratureConfig& cfg = {});
Estimate lifshitz_energy(const TriLayer& stack, const QuadratureConfig& cfg = {});
ForceResult lifshitz_force(const TriLayer& stack, const QuadratureConfig& cfg = {});

// Retarded large-distance force from static reflection coefficients,
// -3 hbar c Li4(r1 r3) / (8 pi^2 sqrt(eps2(0)) L^4). Throws
// StaticPermittivityError for a conducting gap medium.
double long_distance_estimate(const TriLayer& stack, double L);
inline double long_distance_estimate(const TriLayer& stack) {
  return long_distance_estimate(stack, stack.gap);
}

}  // namespace casimir
