#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace casimir {

// Dielectric functions evaluated at imaginary frequency i xi.
// All frequencies are angular, in rad/s.

struct Vacuum {};

struct Plasma {
  double omega_p = 0.0;
};

struct Drude {
  double omega_p = 0.0;
  double gamma = 0.0;
};

// Dielectric with one infrared and one ultraviolet Lorentz resonance.
struct TwoOscillator {
  double c_ir = 0.0;
  double omega_ir = 0.0;
  double c_uv = 0.0;
  double omega_uv = 0.0;
};

using DielectricModel = std::variant<Vacuum, Plasma, Drude, TwoOscillator>;

// Throws DomainError on non-positive frequencies or negative strengths.
void validate(const DielectricModel& m);

// eps(i xi), xi > 0.
double eps_imag(const DielectricModel& m, double xi);

// eps(i xi) - 1 without the cancellation at large xi.
double chi_imag(const DielectricModel& m, double xi);

// Real-frequency plasma permittivity 1 - (omega_p / omega)^2. Plasma only.
double eps_real_plasma(const DielectricModel& m, double omega);

// sqrt(C_uv omega_uv^2 + C_ir omega_ir^2)
double effective_plasma_frequency(const TwoOscillator& m);

// Frequency at which eps(i xi) - 1 starts to fall off; zero for vacuum.
double characteristic_frequency(const DielectricModel& m);

// eps(i xi -> 0); +inf for conductors.
double static_permittivity(const DielectricModel& m);

std::string describe(const DielectricModel& m);

namespace presets {
DielectricModel gold_drude();
DielectricModel gold_plasma();
DielectricModel silica();
DielectricModel bromobenzene();
}  // namespace presets

// Built-in named models: gold-drude, gold-plasma, silica-2osc,
// bromobenzene-2osc, vacuum.
std::vector<std::pair<std::string, DielectricModel>> builtin_presets();
std::optional<DielectricModel> find_builtin_preset(std::string_view name);

//****************************************************************************

// Body 1 | gap medium | body 3, gap width in metres.
struct TriLayer {
  DielectricModel body1 = Vacuum{};
  DielectricModel gap_medium = Vacuum{};
  DielectricModel body3 = Vacuum{};
  double gap = 0.0;

  void validate() const;
  TriLayer with_gap(double L) const;
  TriLayer swapped() const;
};

enum class Ordering { Ascending, Descending, Neither };

struct OrderingSample {
  double xi = 0.0;
  double eps1 = 0.0;
  double eps2 = 0.0;
  double eps3 = 0.0;
  Ordering ordering = Ordering::Neither;
};

// eps_first(i xi) == eps_second(i xi) at xi; layers are numbered 1, 2, 3.
struct Crossover {
  double xi = 0.0;
  int first = 0;
  int second = 0;
};

struct OrderingReport {
  std::vector<OrderingSample> samples;
  std::vector<Crossover> crossovers;

  bool repulsive_everywhere() const;
};

// Labels eps1 < eps2 < eps3 (Ascending) or eps1 > eps2 > eps3 (Descending) on
// a strictly increasing grid, and locates every pairwise crossing between
// neighbouring grid points to 1e-6 relative.
OrderingReport check_repulsion_condition(const TriLayer& stack, std::span<const double> xi_grid);

}  // namespace casimir
