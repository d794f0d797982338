#pragma once

// Brute-force Lifshitz pressure on a fixed grid: midpoint rule in t, s on
// (0, 1)^2 with xi = xi0 t / (1 - t), k = s / ((1 - s) L). Textbook Fresnel
// coefficients, nothing shared with the adaptive code except eps_imag.

#include <cmath>
#include <functional>

#include "casimir/constants.hpp"
#include "casimir/dielectric.hpp"

namespace oracle {

inline double lifshitz_pressure_grid(const casimir::TriLayer& st, double xi0, int n = 2000) {
  using casimir::constants::c;
  using casimir::constants::hbar;
  using casimir::constants::pi;
  const double L = st.gap;
  const double h = 1.0 / n;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double t = (i + 0.5) * h;
    const double xi = xi0 * t / (1.0 - t);
    const double dxi = xi0 / ((1.0 - t) * (1.0 - t));
    const double e1 = casimir::eps_imag(st.body1, xi);
    const double e2 = casimir::eps_imag(st.gap_medium, xi);
    const double e3 = casimir::eps_imag(st.body3, xi);
    const double w2 = xi * xi / (c * c);
    double inner = 0.0;
    for (int j = 0; j < n; ++j) {
      const double s = (j + 0.5) * h;
      const double k = s / ((1.0 - s) * L);
      const double dk = 1.0 / ((1.0 - s) * (1.0 - s) * L);
      const double k1 = std::sqrt(k * k + e1 * w2);
      const double k2 = std::sqrt(k * k + e2 * w2);
      const double k3 = std::sqrt(k * k + e3 * w2);
      const double ex = std::exp(-2.0 * k2 * L);
      const double tm = (e2 * k1 - e1 * k2) / (e2 * k1 + e1 * k2) * (e2 * k3 - e3 * k2) / (e2 * k3 + e3 * k2) * ex;
      const double te = (k2 - k1) / (k2 + k1) * (k2 - k3) / (k2 + k3) * ex;
      inner += k * k2 * (tm / (1.0 - tm) + te / (1.0 - te)) * dk;
    }
    sum += inner * h * dxi;
  }
  return -hbar / (2.0 * pi * pi) * sum * h;
}

}  // namespace oracle
