#pragma once

#include "casimir/numerics.hpp"
#include "casimir/surface_modes.hpp"

namespace casimir {

// Non-retarded coupled-plasmon frequencies at dimensionless wavevector
// k = 2 q L, in units of omega_p1 / 2: the lower and upper root of the
// coupled-interface biquadratic.
struct PsiPair {
  double lower = 0.0;
  double upper = 0.0;
};
PsiPair psi_pair(double alpha, double beta, double k);

// Y(alpha, beta) = int_0^inf k [psi_lower + psi_upper - psi_lower(inf) - psi_upper(inf)] dk.
Estimate y_integral(double alpha, double beta, const QuadratureConfig& cfg = {1e-10});

// Short-distance plasmon energy hbar omega_p1 Y / (32 pi L^2), J/m^2.
double plasmon_energy_short(const PlasmaTriple& p);

// d eta_force / d(L / lambda_p1) of the short-distance law, -30 Y / pi^2.
double short_distance_slope(double alpha, double beta);

struct BranchPair {
  Estimate minus;  // omega_minus branch
  Estimate plus;   // omega_plus branch
  double total() const { return minus.value + plus.value; }
  double total_error() const { return minus.error + plus.error; }
};

// Zero-point energy of the two coupled surface-plasmon branches relative to
// the uncoupled interfaces, J/m^2. Each branch is measured against the
// single-interface plasmon it joins at large k and integrated over k from
// its onset.
BranchPair plasmon_energy(const PlasmaTriple& p, const QuadratureConfig& cfg = {1e-9},
                          const RootConfig& roots = {});

// Same energy integrated over Q^2 = k^2 - omega^2 / c^2, where the dispersion
// relation is a quadratic in omega^2. Needs an evanescent gap on both
// branches, i.e. omega_p2 above the smaller body plasma frequency.
BranchPair plasmon_energy_q_route(const PlasmaTriple& p, const QuadratureConfig& cfg = {1e-9});

// Pressure of the surface-plasmon branches, -dE/dL, N/m^2, from the
// implicit derivative of the dispersion relation.
BranchPair plasmon_force(const PlasmaTriple& p, const QuadratureConfig& cfg = {1e-9},
                         const RootConfig& roots = {});

// Lifshitz energy of the plasma stack split into surface-plasmon and
// remaining (photonic) parts. Energies in J/m^2, eta = E / E_perfect-mirror.
struct EnergyBreakdown {
  double gap = 0.0;
  double Lambda = 0.0;
  double total = 0.0;
  double plasmon_minus = 0.0;
  double plasmon_plus = 0.0;
  double plasmon = 0.0;
  double photon = 0.0;
  double eta_total = 0.0;
  double eta_plasmon_minus = 0.0;
  double eta_plasmon_plus = 0.0;
  double eta_plasmon = 0.0;
  double eta_photon = 0.0;
};

EnergyBreakdown energy_breakdown(const PlasmaTriple& p, const QuadratureConfig& cfg = {1e-8},
                                 const RootConfig& roots = {});

}  // namespace casimir
