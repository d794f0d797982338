#include "casimir/dielectric.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "casimir/errors.hpp"

namespace casimir {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_frequency(double w, const char* what) {
  if (!(w > 0.0) || !std::isfinite(w))
    throw DomainError(std::string(what) + " must be finite and > 0");
}

void require_strength(double c, const char* what) {
  if (!(c >= 0.0) || !std::isfinite(c))
    throw DomainError(std::string(what) + " must be finite and >= 0");
}

}  // namespace

void validate(const DielectricModel& m) {
  std::visit(overloaded{
                 [](const Vacuum&) {},
                 [](const Plasma& p) { require_frequency(p.omega_p, "plasma frequency"); },
                 [](const Drude& d) {
                   require_frequency(d.omega_p, "plasma frequency");
                   require_frequency(d.gamma, "Drude relaxation rate");
                 },
                 [](const TwoOscillator& o) {
                   require_strength(o.c_ir, "infrared strength");
                   require_strength(o.c_uv, "ultraviolet strength");
                   require_frequency(o.omega_ir, "infrared resonance");
                   require_frequency(o.omega_uv, "ultraviolet resonance");
                 },
             },
             m);
}

double chi_imag(const DielectricModel& m, double xi) {
  if (!(xi > 0.0) || !std::isfinite(xi)) throw DomainError("eps_imag requires finite xi > 0");
  validate(m);
  return std::visit(overloaded{
                        [](const Vacuum&) { return 0.0; },
                        [xi](const Plasma& p) {
                          const double r = p.omega_p / xi;
                          return r * r;
                        },
                        [xi](const Drude& d) { return d.omega_p / xi * (d.omega_p / (d.gamma + xi)); },
                        [xi](const TwoOscillator& o) {
                          const double a = xi / o.omega_ir;
                          const double b = xi / o.omega_uv;
                          return o.c_ir / (1.0 + a * a) + o.c_uv / (1.0 + b * b);
                        },
                    },
                    m);
}

double eps_imag(const DielectricModel& m, double xi) { return 1.0 + chi_imag(m, xi); }

double eps_real_plasma(const DielectricModel& m, double omega) {
  const auto* p = std::get_if<Plasma>(&m);
  if (p == nullptr) throw UnsupportedModelError("real-frequency permittivity needs a plasma model");
  if (!(omega > 0.0) || !std::isfinite(omega))
    throw DomainError("eps_real_plasma requires finite omega > 0");
  const double r = p->omega_p / omega;
  return 1.0 - r * r;
}

double effective_plasma_frequency(const TwoOscillator& m) {
  return std::sqrt(m.c_uv * m.omega_uv * m.omega_uv + m.c_ir * m.omega_ir * m.omega_ir);
}

double characteristic_frequency(const DielectricModel& m) {
  return std::visit(overloaded{
                        [](const Vacuum&) { return 0.0; },
                        [](const Plasma& p) { return p.omega_p; },
                        [](const Drude& d) { return d.omega_p; },
                        [](const TwoOscillator& o) { return std::max(o.omega_ir, o.omega_uv); },
                    },
                    m);
}

double static_permittivity(const DielectricModel& m) {
  return std::visit(overloaded{
                        [](const Vacuum&) { return 1.0; },
                        [](const Plasma&) { return std::numeric_limits<double>::infinity(); },
                        [](const Drude&) { return std::numeric_limits<double>::infinity(); },
                        [](const TwoOscillator& o) { return 1.0 + o.c_ir + o.c_uv; },
                    },
                    m);
}

std::string describe(const DielectricModel& m) {
  std::ostringstream os;
  os.precision(6);
  std::visit(overloaded{
                 [&](const Vacuum&) { os << "vacuum"; },
                 [&](const Plasma& p) { os << "plasma(omega_p=" << p.omega_p << ")"; },
                 [&](const Drude& d) {
                   os << "drude(omega_p=" << d.omega_p << ", gamma=" << d.gamma << ")";
                 },
                 [&](const TwoOscillator& o) {
                   os << "two-oscillator(c_ir=" << o.c_ir << ", omega_ir=" << o.omega_ir
                      << ", c_uv=" << o.c_uv << ", omega_uv=" << o.omega_uv << ")";
                 },
             },
             m);
  return os.str();
}

namespace presets {
DielectricModel gold_drude() { return Drude{1.367e16, 5.316e13}; }
DielectricModel gold_plasma() { return Plasma{1.367e16}; }
DielectricModel silica() { return TwoOscillator{0.829, 0.867e14, 1.098, 2.034e16}; }
DielectricModel bromobenzene() { return TwoOscillator{2.967, 5.47e14, 1.335, 1.286e16}; }
}  // namespace presets

std::vector<std::pair<std::string, DielectricModel>> builtin_presets() {
  return {
      {"gold-drude", presets::gold_drude()},
      {"gold-plasma", presets::gold_plasma()},
      {"silica-2osc", presets::silica()},
      {"bromobenzene-2osc", presets::bromobenzene()},
      {"vacuum", Vacuum{}},
  };
}

std::optional<DielectricModel> find_builtin_preset(std::string_view name) {
  for (auto& [n, m] : builtin_presets())
    if (n == name) return m;
  return std::nullopt;
}

//****************************************************************************

void TriLayer::validate() const {
  casimir::validate(body1);
  casimir::validate(gap_medium);
  casimir::validate(body3);
  if (!(gap > 0.0) || !std::isfinite(gap)) throw DomainError("gap width must be finite and > 0");
}

TriLayer TriLayer::with_gap(double L) const {
  TriLayer t = *this;
  t.gap = L;
  return t;
}

TriLayer TriLayer::swapped() const {
  TriLayer t = *this;
  std::swap(t.body1, t.body3);
  return t;
}

bool OrderingReport::repulsive_everywhere() const {
  return !samples.empty() && std::all_of(samples.begin(), samples.end(), [](const OrderingSample& s) {
    return s.ordering != Ordering::Neither;
  });
}

namespace {

Ordering classify(double e1, double e2, double e3) {
  if (e1 < e2 && e2 < e3) return Ordering::Ascending;
  if (e1 > e2 && e2 > e3) return Ordering::Descending;
  return Ordering::Neither;
}

}  // namespace

OrderingReport check_repulsion_condition(const TriLayer& stack, std::span<const double> xi_grid) {
  validate(stack.body1);
  validate(stack.gap_medium);
  validate(stack.body3);
  if (xi_grid.empty()) throw DomainError("frequency grid is empty");
  for (std::size_t i = 0; i < xi_grid.size(); ++i) {
    if (!(xi_grid[i] > 0.0) || !std::isfinite(xi_grid[i]))
      throw DomainError("frequency grid must be finite and positive");
    if (i > 0 && !(xi_grid[i] > xi_grid[i - 1]))
      throw DomainError("frequency grid must be strictly increasing");
  }

  const std::array<const DielectricModel*, 3> layers{&stack.body1, &stack.gap_medium, &stack.body3};
  auto diff = [&](int a, int b, double xi) {
    return eps_imag(*layers[a - 1], xi) - eps_imag(*layers[b - 1], xi);
  };

  OrderingReport out;
  out.samples.reserve(xi_grid.size());
  for (double xi : xi_grid) {
    OrderingSample s;
    s.xi = xi;
    s.eps1 = eps_imag(stack.body1, xi);
    s.eps2 = eps_imag(stack.gap_medium, xi);
    s.eps3 = eps_imag(stack.body3, xi);
    s.ordering = classify(s.eps1, s.eps2, s.eps3);
    out.samples.push_back(s);
  }

  constexpr std::array<std::pair<int, int>, 3> pairs{{{1, 2}, {2, 3}, {1, 3}}};
  for (std::size_t i = 0; i + 1 < xi_grid.size(); ++i) {
    for (auto [a, b] : pairs) {
      double lo = xi_grid[i];
      double hi = xi_grid[i + 1];
      double flo = diff(a, b, lo);
      const double fhi = diff(a, b, hi);
      if (flo == 0.0) {
        out.crossovers.push_back({lo, a, b});
        continue;
      }
      if (fhi == 0.0 || (flo < 0.0) == (fhi < 0.0)) continue;
      while (hi - lo > 1e-6 * lo) {
        const double mid = 0.5 * (lo + hi);
        const double fm = diff(a, b, mid);
        if (fm == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      out.crossovers.push_back({0.5 * (lo + hi), a, b});
    }
  }
  if (!xi_grid.empty()) {
    for (auto [a, b] : pairs)
      if (diff(a, b, xi_grid.back()) == 0.0) out.crossovers.push_back({xi_grid.back(), a, b});
  }
  std::sort(out.crossovers.begin(), out.crossovers.end(),
            [](const Crossover& l, const Crossover& r) { return l.xi < r.xi; });
  return out;
}

}  // namespace casimir
