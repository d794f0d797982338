// One PASS/FAIL line per criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "casimir/constants.hpp"
#include "casimir/dielectric.hpp"
#include "casimir/errors.hpp"
#include "casimir/hamaker.hpp"
#include "casimir/lifshitz.hpp"
#include "casimir/plasmon_energy.hpp"
#include "casimir/surface_modes.hpp"
#include "casimir_cli/cli.hpp"
#include "dispersion.hpp"
#include "lifshitz_grid.hpp"

using namespace casimir;
using constants::c;
using constants::pi;

namespace {

int failures = 0;

void report(int id, const char* name, bool ok, const std::string& detail) {
  std::printf("%s %2d %s: %s\n", ok ? "PASS" : "FAIL", id, name, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<double> log_space(double a, double b, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = n == 1 ? a : a * std::pow(b / a, double(i) / (n - 1));
  return v;
}

// every criterion runs even when an earlier one throws
void guarded(int id, const char* name, const std::function<void()>& body) {
  try {
    body();
  } catch (const std::exception& e) {
    report(id, name, false, std::string("threw: ") + e.what());
  }
}

TriLayer realistic() {
  return TriLayer{presets::silica(), presets::bromobenzene(), presets::gold_drude(), 0.0};
}

}  // namespace

int main() {
  guarded(1, "Y(1.1, 1.21)", [] {
    const auto t0 = std::chrono::steady_clock::now();
    const double y = y_integral(1.1, 1.21).value;
    const double dt = seconds_since(t0);
    report(1, "Y(1.1, 1.21)", std::abs(y - 0.00497) <= 2e-5 && dt < 1.0,
           fmt("Y = %.6f (0.00497 +- 2e-5), %.3f s (< 1 s)", y, dt));
  });

  guarded(2, "small-delta law", [] {
    bool ok = true;
    std::string d;
    for (double del : {0.001, 0.005, 0.01}) {
      const double a = 1.0 + del;
      const double r = y_integral(a, a * a).value / (del * del / 2.0);
      ok = ok && r >= 0.9 && r <= 1.1;
      d += fmt("delta=%g ratio=%.4f ", del, r);
    }
    report(2, "small-delta law", ok, d + "(in [0.9, 1.1])");
  });

  guarded(3, "psi asymptote", [] {
    const double a = 1e3;
    const double r = y_integral(a, a * a).value / a;
    report(3, "psi asymptote", std::abs(r - 0.67) <= 0.01, fmt("psi/alpha = %.5f (0.67 +- 0.01)", r));
  });

  guarded(4, "slope anchors", [] {
    const double s1 = short_distance_slope(5.0, 25.0), s2 = short_distance_slope(0.698, 0.641);
    report(4, "slope anchors", rel(s1, -7.38) <= 0.01 && rel(s2, -0.03355) <= 0.01,
           fmt("%.5f (-7.38 +- 1%%), %.6f (-0.03355 +- 1%%)", s1, s2));
  });

  guarded(5, "effective plasma frequencies", [] {
    const double w1 = effective_plasma_frequency(std::get<TwoOscillator>(presets::silica()));
    const double w2 = effective_plasma_frequency(std::get<TwoOscillator>(presets::bromobenzene()));
    report(5, "effective plasma frequencies", rel(w1, 2.131e16) <= 2e-3 && rel(w2, 1.488e16) <= 2e-3,
           fmt("silica %.4e (2.131e16), bromobenzene %.4e (1.488e16), +- 0.2%%", w1, w2));
  });

  guarded(6, "ordering crossovers", [] {
    const std::vector<double> xi{5e15, 1e16, 5e16};
    const auto r = check_repulsion_condition(realistic().with_gap(1e-7), xi);
    const auto& s = r.samples;
    const bool ok = s[0].ordering == Ordering::Ascending && s[1].ordering != Ordering::Ascending &&
                    s[2].ordering == Ordering::Descending;
    std::string d;
    for (const auto& x : s)
      d += fmt("xi=%.0e eps=(%.4f, %.4f, %.4f) ", x.xi, x.eps1, x.eps2, x.eps3);
    report(6, "ordering crossovers", ok, d);
  });

  guarded(7, "perfect-mirror limit", [] {
    const double wp = 1e16;
    const TriLayer st{Plasma{wp}, Vacuum{}, Plasma{wp}, 1e3 * c / wp};
    const double eta = lifshitz_force(st, QuadratureConfig{1e-9}).eta_force;
    report(7, "perfect-mirror limit", std::abs(eta - 1.0) <= 0.01, fmt("eta_F = %.5f (1 +- 1%%)", eta));
  });

  guarded(8, "repulsion sign suite", [] {
    const auto t0 = std::chrono::steady_clock::now();
    const auto p = PlasmaTriple::from_ratios(5.0, 25.0, 1.0);
    const TriLayer st{Plasma{p.omega_p1}, Plasma{p.omega_p2}, Plasma{p.omega_p3}, 0.0};
    bool ok = true;
    double worst = -INFINITY;
    for (double Lam : log_space(1e-2, 10.0, 20)) {
      const double eta = lifshitz_force(st.with_gap(Lam * c / p.omega_p1), QuadratureConfig{1e-8}).eta_force;
      ok = ok && eta < 0.0;
      worst = std::max(worst, eta);
    }
    const double H = hamaker_constant(st).h123;
    const double dt = seconds_since(t0);
    report(8, "repulsion sign suite", ok && H < 0.0 && dt < 60.0,
           fmt("max eta_F = %.4e (< 0), H = %.4e J (< 0), %.2f s (< 60 s)", worst, H, dt));
  });

  guarded(9, "asymptote merge", [] {
    const double wp1 = 1e16, L = 0.01 * 2.0 * pi * c / wp1;
    const TriLayer st{Plasma{wp1}, Plasma{5.0 * wp1}, Plasma{25.0 * wp1}, L};
    const double eta = lifshitz_force(st, QuadratureConfig{1e-9}).eta_force;
    const double asym = short_distance_slope(5.0, 25.0) * 0.01;
    report(9, "asymptote merge", rel(eta, asym) <= 0.05,
           fmt("eta_F = %.5f, asymptote = %.5f, rel = %.3f (<= 0.05)", eta, asym, rel(eta, asym)));
  });

  guarded(10, "realistic plateau", [] {
    const double eta = lifshitz_force(realistic().with_gap(300e-9), QuadratureConfig{1e-9}).eta_force;
    report(10, "realistic plateau", eta >= -0.065 && eta <= -0.049, fmt("eta_F = %.5f (in [-0.065, -0.049])", eta));
  });

  guarded(11, "5% magnitude claim", [] {
    const double L = 150e-9;
    const double fr = lifshitz_pressure(realistic().with_gap(L), QuadratureConfig{1e-9}).value;
    const TriLayer gold{presets::gold_plasma(), Vacuum{}, presets::gold_plasma(), L};
    const double fg = lifshitz_pressure(gold, QuadratureConfig{1e-9}).value;
    const double r = std::abs(fr) / std::abs(fg);
    report(11, "5% magnitude claim", std::abs(r - 0.05) <= 0.02, fmt("ratio = %.4f (0.05 +- 0.02)", r));
  });

  guarded(12, "long-distance decay law", [] {
    const double wp1 = 1e16, wp2 = 5.0 * wp1;
    const TriLayer st{Plasma{wp1}, Plasma{wp2}, Plasma{25.0 * wp1}, 0.0};
    const auto Lam = log_space(3.0, 6.0, 7);
    const double want = -2.0 * wp2 / c;
    double worst = 0.0;
    for (std::size_t i = 0; i + 1 < Lam.size(); ++i) {
      const double L0 = Lam[i] * c / wp1, L1 = Lam[i + 1] * c / wp1;
      const double F0 = lifshitz_pressure(st.with_gap(L0), QuadratureConfig{1e-10}).value;
      const double F1 = lifshitz_pressure(st.with_gap(L1), QuadratureConfig{1e-10}).value;
      const double slope = std::log(std::abs(F1) * L1 / (std::abs(F0) * L0)) / (L1 - L0);
      worst = std::max(worst, rel(slope, want));
    }
    report(12, "long-distance decay law", worst <= 0.05, fmt("max rel deviation %.4f (<= 0.05)", worst));
  });

  guarded(13, "oracle equivalence", [] {
    double worst = 0.0;
    std::string d;
    for (double L : {50e-9, 150e-9, 500e-9}) {
      const TriLayer st = realistic().with_gap(L);
      const double a = lifshitz_pressure(st, QuadratureConfig{1e-10}).value;
      const double o = oracle::lifshitz_pressure_grid(st, c / (2.0 * L), 2000);
      worst = std::max(worst, rel(a, o));
      d += fmt("L=%.3g m rel=%.2e ", L, rel(a, o));
    }
    report(13, "oracle equivalence", worst < 1e-4, d + "(< 1e-4)");
  });

  guarded(14, "dispersion residuals", [] {
    const cli::Fig1Params fp;
    const auto cases = cli::fig1_cases(fp, cli::RunOptions{});
    double worst_res = 0.0, worst_prod = 0.0, k_rel = INFINITY;
    std::size_t n = 0;
    for (const auto& cs : cases) {
      const auto& t = cs.triple;
      const double A2 = t.alpha() * t.alpha(), A3 = t.beta() * t.beta();
      for (const auto* br : {&cs.minus, &cs.plus})
        for (const auto& s : br->samples) {
          worst_res = std::max(worst_res, s.residual);
          const double K = s.k * c / t.omega_p1, u = std::pow(s.omega / t.omega_p1, 2);
          if (K * K - u + A2 > 1e-3 && K * K - u + 1.0 >= 0.0 && K * K - u + A3 >= 0.0)
            worst_prod = std::max(worst_prod, std::abs(oracle::product_residual(1.0, A2, A3, t.Lambda(), K, u)));
          ++n;
        }
      if (cs.label == "b") k_rel = rel(cs.plus.onset_k, onset_k_plus(t));
    }
    report(14, "dispersion residuals", worst_res < 1e-10 && worst_prod < 1e-10 && k_rel <= 1e-6,
           fmt("%zu points, max residual %.2e, independent form %.2e (< 1e-10), onset rel %.2e (<= 1e-6)", n,
               worst_res, worst_prod, k_rel));
  });

  guarded(15, "mode limits", [] {
    constexpr double wp1 = 1e16;
    const auto grid = log_space(1e-4 * wp1 / c, 1e8 * wp1 / c, 80);
    auto sp = [&](double wi, double w2) { return single_plasmon(wi * wp1, w2 * wp1, grid.back()) / wp1; };
    double worst = 0.0;
    auto check = [&](double got, double want) { worst = std::max(worst, rel(got, want)); };
    // case (a): gap below equal bodies
    {
      const auto [m, p] = coupled_branches(PlasmaTriple::from_ratios(0.5, 1.0, 1e-5), grid);
      check(m.samples.front().omega / wp1, 0.5);
      check(p.samples.front().omega / wp1, 1.0);
      check(m.samples.back().omega / wp1, sp(1.0, 0.5));
      check(p.samples.back().omega / wp1, sp(1.0, 0.5));
    }
    // case (b): omega_p1 < omega_p2 < omega_p3
    {
      const double a = 2.0, b = 3.0;
      const auto tr = PlasmaTriple::from_ratios(a, b, 1e-5);
      const auto [m, p] = coupled_branches(tr, grid);
      check(m.samples.front().omega / wp1, 1.0);
      check(m.samples.back().omega / wp1, sp(1.0, a));
      check(p.samples.back().omega / wp1, sp(b, a));
      const double k0 = p.onset_k * (1 + 1e-9);
      const auto [m0, p0] = coupled_branches(tr, std::vector<double>{k0, 2 * k0});
      check(p0.samples.front().omega / wp1, a);
    }
    report(15, "mode limits", worst <= 1e-3, fmt("max rel deviation %.2e (<= 1e-3)", worst));
  });

  guarded(16, "thermodynamic consistency", [] {
    const auto p = PlasmaTriple::from_ratios(5.0, 25.0, 1.0);
    const TriLayer st{Plasma{p.omega_p1}, Plasma{p.omega_p2}, Plasma{p.omega_p3}, 0.0};
    double worst_l = 0.0, worst_p = 0.0;
    for (double Lam : {0.05, 0.1, 0.3, 1.0, 3.0}) {
      const double L = Lam * c / p.omega_p1, h = 1e-3 * L;
      const QuadratureConfig q{1e-11};
      const double F = lifshitz_pressure(st.with_gap(L), q).value;
      const double dE = (lifshitz_energy(st.with_gap(L + h), q).value - lifshitz_energy(st.with_gap(L - h), q).value) /
                        (2.0 * h);
      worst_l = std::max(worst_l, rel(-dE, F));
      const QuadratureConfig qp{1e-10};
      const double Fp = plasmon_force(p.with_gap(L), qp).total();
      const double dEp = (plasmon_energy(p.with_gap(L + h), qp).total() - plasmon_energy(p.with_gap(L - h), qp).total()) /
                         (2.0 * h);
      worst_p = std::max(worst_p, rel(-dEp, Fp));
    }
    report(16, "thermodynamic consistency", worst_l <= 1e-3 && worst_p <= 1e-3,
           fmt("Lifshitz max rel %.2e, plasmon max rel %.2e (<= 1e-3)", worst_l, worst_p));
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
