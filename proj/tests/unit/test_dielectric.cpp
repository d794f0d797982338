#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "casimir/dielectric.hpp"
#include "casimir/errors.hpp"

using namespace casimir;

namespace {

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = lo * std::pow(hi / lo, double(i) / (n - 1));
  return g;
}

TriLayer realistic() { return {presets::silica(), presets::bromobenzene(), presets::gold_drude(), 100e-9}; }

}  // namespace

TEST(EpsImag, Examples) {
  EXPECT_DOUBLE_EQ(eps_imag(Plasma{3e15}, 3e15), 2.0);
  EXPECT_EQ(eps_imag(Vacuum{}, 1.0), 1.0);
  EXPECT_EQ(eps_imag(Vacuum{}, 1e30), 1.0);
  EXPECT_NEAR(eps_imag(presets::silica(), 1e6), 2.927, 1e-9);
}

TEST(EpsImag, DrudeFormula) {
  const Drude d{1.367e16, 5.316e13};
  const double xi = 2e15;
  EXPECT_DOUBLE_EQ(eps_imag(d, xi), 1.0 + d.omega_p * d.omega_p / (xi * (xi + d.gamma)));
}

TEST(EpsImag, Domain) {
  EXPECT_THROW(eps_imag(Plasma{1e15}, 0.0), DomainError);
  EXPECT_THROW(eps_imag(Plasma{1e15}, -1.0), DomainError);
  EXPECT_THROW(eps_imag(Plasma{1e15}, INFINITY), DomainError);
  EXPECT_THROW(eps_imag(Plasma{-1.0}, 1.0), DomainError);
  EXPECT_THROW(eps_imag(TwoOscillator{-0.1, 1e14, 1.0, 1e16}, 1.0), DomainError);
}

TEST(EpsImag, StrictlyDecreasingToOne) {
  const std::vector<DielectricModel> models = {Plasma{1e16}, Drude{1.367e16, 5.316e13},
                                               presets::silica(), presets::bromobenzene()};
  for (const auto& m : models) {
    double prev = INFINITY;
    for (double xi : log_grid(1e10, 1e20, 300)) {
      const double e = eps_imag(m, xi);
      EXPECT_GE(e, 1.0);
      EXPECT_LT(e, prev) << describe(m) << " at " << xi;
      prev = e;
    }
    EXPECT_NEAR(eps_imag(m, 1e24), 1.0, 1e-9);
  }
}

TEST(EpsImag, DrudeTendsToPlasma) {
  const double wp = 1e16;
  const Drude d{wp, 1e-9 * wp};
  for (double xi : log_grid(1e13, 1e18, 10))
    EXPECT_NEAR(eps_imag(d, xi), eps_imag(Plasma{wp}, xi), 1e-6 * eps_imag(Plasma{wp}, xi));
}

TEST(EpsReal, Plasma) {
  const double wp = 2e15;
  EXPECT_NEAR(eps_real_plasma(Plasma{wp}, wp), 0.0, 1e-15);
  EXPECT_NEAR(eps_real_plasma(Plasma{wp}, wp / std::sqrt(2.0)), -1.0, 1e-14);
  EXPECT_NEAR(eps_real_plasma(Plasma{wp}, 1e9 * wp), 1.0, 1e-15);
  EXPECT_THROW(eps_real_plasma(Drude{wp, 1e13}, wp), UnsupportedModelError);
  EXPECT_THROW(eps_real_plasma(Vacuum{}, wp), UnsupportedModelError);
}

TEST(EffectivePlasma, ReferenceValues) {
  const auto s = std::get<TwoOscillator>(presets::silica());
  const auto b = std::get<TwoOscillator>(presets::bromobenzene());
  EXPECT_NEAR(effective_plasma_frequency(s), 2.131e16, 0.002 * 2.131e16);
  EXPECT_NEAR(effective_plasma_frequency(b), 1.488e16, 0.002 * 1.488e16);
  EXPECT_EQ(effective_plasma_frequency(TwoOscillator{0.0, 1e14, 1.0, 3e16}), 3e16);
}

TEST(EffectivePlasma, HighFrequencyLimit) {
  for (const auto& m : {presets::silica(), presets::bromobenzene()}) {
    const auto& t = std::get<TwoOscillator>(m);
    const double xi = 1e6 * t.omega_uv;
    const double lim = xi * xi * chi_imag(m, xi);
    const double w = effective_plasma_frequency(t);
    EXPECT_NEAR(lim, w * w, 1e-6 * w * w);
    EXPECT_NEAR(eps_imag(m, xi), 1.0 + chi_imag(m, xi), 1e-16);
  }
}

TEST(StaticPermittivity, Values) {
  EXPECT_NEAR(static_permittivity(presets::silica()), 2.927, 1e-12);
  EXPECT_EQ(static_permittivity(Vacuum{}), 1.0);
  EXPECT_TRUE(std::isinf(static_permittivity(Plasma{1e16})));
  EXPECT_TRUE(std::isinf(static_permittivity(presets::gold_drude())));
}

TEST(Presets, Lookup) {
  EXPECT_TRUE(find_builtin_preset("gold-drude"));
  EXPECT_TRUE(find_builtin_preset("silica-2osc"));
  EXPECT_TRUE(find_builtin_preset("bromobenzene-2osc"));
  EXPECT_FALSE(find_builtin_preset("unobtainium"));
  const auto g = std::get<Drude>(*find_builtin_preset("gold-drude"));
  EXPECT_EQ(g.omega_p, 1.367e16);
  EXPECT_EQ(g.gamma, 5.316e13);
}

TEST(Repulsion, RealisticStackOrdering) {
  const std::vector<double> grid = log_grid(1e13, 1e18, 400);
  const OrderingReport r = check_repulsion_condition(realistic(), grid);
  ASSERT_EQ(r.samples.size(), grid.size());
  for (const auto& s : r.samples) {
    if (s.xi < 8.5e15) EXPECT_EQ(s.ordering, Ordering::Ascending) << s.xi;
    if (s.xi > 3.2e16) EXPECT_EQ(s.ordering, Ordering::Descending) << s.xi;
  }
  // crossovers bounding the window: first ascending order breaks near 9e15
  double first = INFINITY;
  for (const auto& c : r.crossovers) first = std::min(first, c.xi);
  EXPECT_GT(first, 8.5e15);
  EXPECT_LT(first, 9.5e15);
  for (const auto& c : r.crossovers) {
    const auto m = [&](int i) { return i == 1 ? realistic().body1 : i == 2 ? realistic().gap_medium : realistic().body3; };
    EXPECT_NEAR(eps_imag(m(c.first), c.xi), eps_imag(m(c.second), c.xi), 1e-5);
  }
  EXPECT_FALSE(r.repulsive_everywhere());
}

TEST(Repulsion, PlasmaTripleAscendingEverywhere) {
  const double w0 = 1e15;
  const TriLayer t{Plasma{w0}, Plasma{5 * w0}, Plasma{25 * w0}, 1e-7};
  const OrderingReport r = check_repulsion_condition(t, log_grid(1e10, 1e20, 100));
  EXPECT_TRUE(r.repulsive_everywhere());
  EXPECT_TRUE(r.crossovers.empty());
}

TEST(Repulsion, BadGrid) {
  EXPECT_THROW(check_repulsion_condition(realistic(), std::vector<double>{}), DomainError);
  EXPECT_THROW(check_repulsion_condition(realistic(), std::vector<double>{2.0, 1.0}), DomainError);
  EXPECT_THROW(check_repulsion_condition(realistic(), std::vector<double>{0.0, 1.0}), DomainError);
}
