#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "casimir/errors.hpp"
#include "casimir/numerics.hpp"
#include "casimir/surface_modes.hpp"

using namespace casimir;

namespace {

// E1 by its convergent power series, good for moderate x.
double e1_series(double x) {
  double sum = 0.0;
  double term = 1.0;
  for (int n = 1; n < 200; ++n) {
    term *= -x / n;
    sum += term / n;
  }
  return -std::numbers::egamma - std::log(x) - sum;
}

// Lentz continued fraction, good for x >~ 1.
double e1_continued_fraction(double x) {
  const double tiny = 1e-300;
  double b = x + 1.0, cf = 1.0 / tiny, d = 1.0 / b, h = d;
  for (int i = 1; i < 500; ++i) {
    const double a = -double(i) * i;
    b += 2.0;
    d = 1.0 / (a * d + b);
    cf = b + a / cf;
    const double del = cf * d;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x);
}

}  // namespace

TEST(SemiInfinite, Exponential) {
  const Estimate r = integrate_semi_infinite([](double x) { return std::exp(-x); }, {1e-12, 0.0});
  EXPECT_NEAR(r.value, 1.0, 1e-10);
}

TEST(SemiInfinite, XExpMinus2X) {
  const Estimate r =
      integrate_semi_infinite([](double x) { return x * std::exp(-2.0 * x); }, {1e-12, 0.0});
  EXPECT_NEAR(r.value, 0.25, 1e-10);
}

TEST(SemiInfinite, PlanckKernel) {
  auto f = [](double x) { return x == 0.0 ? 0.0 : x * x * x / std::expm1(x); };
  const Estimate r = integrate_semi_infinite(f, {1e-12, 0.0});
  const double pi = std::numbers::pi;
  EXPECT_NEAR(r.value, pi * pi * pi * pi / 15.0, 1e-8);
}

TEST(SemiInfinite, ErrorEstimateCoversTruth) {
  QuadratureConfig cfg{1e-6, 0.0};
  const Estimate r = integrate_semi_infinite([](double x) { return 1.0 / (1.0 + x * x); }, cfg);
  EXPECT_LE(std::abs(r.value - std::numbers::pi / 2), std::max(r.error, 1e-6 * std::abs(r.value)));
}

TEST(SemiInfinite, InvariantUnderPanelDoubling) {
  auto f = [](double x) { return std::exp(-x) * std::cos(3.0 * x) / (1.0 + x); };
  for (int panels : {2, 4, 8, 16}) {
    QuadratureConfig a{1e-9, 0.0};
    a.initial_panels = panels;
    QuadratureConfig b = a;
    b.initial_panels = 2 * panels;
    const Estimate ra = integrate_semi_infinite(f, a);
    const Estimate rb = integrate_semi_infinite(f, b);
    EXPECT_LE(std::abs(ra.value - rb.value), ra.error + rb.error + 1e-15);
  }
}

TEST(SemiInfinite, ExhaustedBudgetThrowsWithEstimate) {
  QuadratureConfig cfg{1e-14, 0.0};
  cfg.max_depth = 4;
  auto f = [](double x) { return x > 0.0 ? 1.0 / std::sqrt(x) * std::exp(-x) : 0.0; };
  try {
    (void)integrate_semi_infinite(f, cfg);
    FAIL() << "expected ConvergenceError";
  } catch (const ConvergenceError& e) {
    EXPECT_NEAR(e.estimate(), std::sqrt(std::numbers::pi), 1e-2);
    EXPECT_GT(e.error_bound(), 0.0);
  }
}

TEST(Interval, Polynomial) {
  const Estimate r = integrate_interval([](double x) { return x * x * x; }, 0.0, 2.0);
  EXPECT_NEAR(r.value, 4.0, 1e-13);
}

TEST(Config, Validation) {
  EXPECT_THROW((QuadratureConfig{0.0}).validate(), DomainError);
  EXPECT_THROW((QuadratureConfig{1.5}).validate(), DomainError);
  QuadratureConfig q;
  q.max_depth = 3;
  EXPECT_THROW(q.validate(), DomainError);
  RootConfig r;
  r.scan_steps = 15;
  EXPECT_THROW(r.validate(), DomainError);
}

TEST(Root, Sqrt2) {
  const Estimate r = find_root_bracketed([](double x) { return x * x - 2.0; }, 1.0, 2.0);
  EXPECT_NEAR(r.value, std::sqrt(2.0), 1e-12);
}

TEST(Root, Cosine) {
  const Estimate r = find_root_bracketed([](double x) { return std::cos(x); }, 1.0, 2.0);
  EXPECT_NEAR(r.value, std::numbers::pi / 2, 1e-12);
}

TEST(Root, NoSignChange) {
  EXPECT_THROW((void)find_root_bracketed([](double x) { return x * x + 1.0; }, -1.0, 1.0),
               BracketError);
}

TEST(Root, StaysInsideBracket) {
  // steep and flat pieces that push secant steps outwards
  std::vector<std::function<double(double)>> fs = {
      [](double x) { return std::atan(1e6 * (x - 0.3)); },
      [](double x) { return std::pow(x - 0.999999, 3); },
      [](double x) { return x < 0.5 ? -1e-300 : 1.0; },
      [](double x) { return std::exp(50.0 * x) - 2.0; },
  };
  for (auto& f : fs) {
    const Estimate r = find_root_bracketed(f, 0.0, 1.0);
    EXPECT_GE(r.value, 0.0);
    EXPECT_LE(r.value, 1.0);
  }
}

// Dispersion residual at fixed K for omega_p2 = 0.5, omega_p3 = 1 (units of
// omega_p1), Lambda = 1, written directly as the product form and scanned on
// 10^6 uniform steps in u = w^2.
TEST(Root, DispersionRootMatchesDenseScan) {
  const double A1 = 1.0, A2 = 0.25, A3 = 1.0, Lam = 1.0, K = 2.0;
  auto P = [&](double u) {
    const double q1 = std::sqrt(K * K - u + A1);
    const double q2 = std::sqrt(K * K - u + A2);
    const double q3 = std::sqrt(K * K - u + A3);
    const double e1 = u - A1, e2 = u - A2, e3 = u - A3;
    return (e2 * q1 + e1 * q2) * (e2 * q3 + e3 * q2) -
           std::exp(-2.0 * q2 * Lam) * (e2 * q1 - e1 * q2) * (e2 * q3 - e3 * q2);
  };
  const double top = K * K + A2;  // evanescent gap
  const int n = 1000000;
  std::vector<double> scan;
  double u0 = top * 1e-9, p0 = P(u0);
  for (int i = 1; i < n; ++i) {
    const double u1 = top * i / n;
    const double p1 = P(u1);
    if (p0 * p1 < 0.0) scan.push_back(std::sqrt(u0 - p0 * (u1 - u0) / (p1 - p0)));
    u0 = u1;
    p0 = p1;
  }
  ASSERT_EQ(scan.size(), 2u);

  CoupledModeSolver solver(PlasmaTriple::from_ratios(0.5, 1.0, Lam));
  const std::vector<double> roots = solver.roots(K);
  ASSERT_EQ(roots.size(), 2u);
  for (int i = 0; i < 2; ++i) EXPECT_NEAR(roots[i], scan[i], 1e-9 * scan[i]);
}

TEST(ExpInt, ValueAtOne) {
  EXPECT_NEAR(expint_e1(1.0), 0.21938393439552, 1e-13);
  EXPECT_NEAR(expint_e1(1.0), e1_series(1.0), 1e-13);
  EXPECT_NEAR(expint_e1(1.0), e1_continued_fraction(1.0), 1e-13);
}

TEST(ExpInt, AgreesWithOraclesOnGrid) {
  for (double x : {0.01, 0.1, 0.5, 2.0, 5.0}) EXPECT_NEAR(expint_e1(x), e1_series(x), 1e-12 * expint_e1(x));
  for (double x : {2.0, 10.0, 50.0, 300.0}) EXPECT_NEAR(expint_e1(x), e1_continued_fraction(x), 1e-12 * expint_e1(x));
}

TEST(ExpInt, LargeArgumentAsymptote) {
  for (double x : {50.0, 200.0, 600.0}) EXPECT_NEAR(expint_e1(x) * x * std::exp(x), 1.0, 1.5 / x);
  EXPECT_EQ(expint_e1(1e6), 0.0);
}

TEST(ExpInt, PositiveAndDecreasing) {
  double prev = INFINITY;
  for (int i = 0; i <= 400; ++i) {
    const double x = std::pow(10.0, -3.0 + i * 0.01);
    const double v = expint_e1(x);
    EXPECT_GT(v, 0.0);
    EXPECT_LT(v, prev);
    prev = v;
  }
}

TEST(ExpInt, DerivativeIdentity) {
  for (double x : {0.05, 0.3, 1.0, 4.0, 20.0}) {
    const double h = 1e-5 * x;
    const double fd = (expint_e1(x + h) - expint_e1(x - h)) / (2.0 * h);
    const double exact = -std::exp(-x) / x;
    EXPECT_NEAR(fd, exact, 1e-8 * std::abs(exact));
  }
}

TEST(ExpInt, Domain) {
  EXPECT_THROW(expint_e1(0.0), DomainError);
  EXPECT_THROW(expint_e1(-1.0), DomainError);
  EXPECT_THROW(expint_e1(NAN), DomainError);
}

TEST(Polylog, KnownValues) {
  const double pi = std::numbers::pi;
  EXPECT_NEAR(polylog(4, 1.0), pi * pi * pi * pi / 90.0, 1e-14);
  EXPECT_NEAR(polylog(4, -1.0), -7.0 * pi * pi * pi * pi / 720.0, 1e-14);
  EXPECT_NEAR(polylog(1, 0.5), std::log(2.0), 1e-14);
  double direct = 0.0;
  for (int n = 1; n < 200; ++n) direct += std::pow(0.3, n) / std::pow(n, 4);
  EXPECT_NEAR(polylog(4, 0.3), direct, 1e-15);
}

// mpmath polylog at 30 digits
TEST(Polylog, NearUnitModulus) {
  const struct {
    int s;
    double x, want;
  } cases[] = {{3, 0.5000001, 0.53721331005614765078}, {3, 0.9, 1.0496589501864399017},
               {3, 0.999999, 1.2020552582323626851},   {3, -0.7, -0.64866632128523545511},
               {3, -0.99999, -0.90153445269289550679}, {4, 0.75, 0.79222102797282777953},
               {4, -0.6, -0.57975749702803279553},     {2, 0.95, 1.4406337969700393438},
               {3, 0.49, 0.5255904518897042592}};
  for (const auto& c : cases) EXPECT_NEAR(polylog(c.s, c.x), c.want, 2e-15 * std::abs(c.want)) << c.s << " " << c.x;
}
