#pragma once

#include "casimir/dielectric.hpp"
#include "casimir/numerics.hpp"

namespace casimir {

// H = (3 hbar / 8 pi^2) sum_n int_0^inf (D12 D32)^n / n^3 dxi with
// D_j2 = (eps_j - eps_2) / (eps_j + eps_2) at imaginary frequency.
// Terms past the 64th are summed as one integral of Li3(D12 D32) minus the
// partial sum. The textbook Hamaker constant is A = 2 pi H.
struct HamakerResult {
  double h123 = 0.0;              // J
  int series_terms_used = 0;
  double truncation_error = 0.0;  // J, dropped tail bound, or error of the summed remainder
  double quadrature_error = 0.0;  // J

  double textbook() const;        // 2 pi h123
};

// Native: F = -H / (3 L^3). Conventional: F = -A / (6 pi L^3), A = 2 pi H.
// Both give the same pressure; the flag picks which constant is reported.
enum class HamakerConvention { Native, Conventional };

HamakerResult hamaker_constant(const TriLayer& stack, const QuadratureConfig& cfg = {1e-10});

// Value of the Hamaker constant in the chosen convention, J.
double hamaker_value(const HamakerResult& h, HamakerConvention conv);

// Non-retarded pressure at separation L, N/m^2. Negative is attractive.
double short_distance_force(const HamakerResult& h, double L,
                            HamakerConvention conv = HamakerConvention::Native);

}  // namespace casimir
