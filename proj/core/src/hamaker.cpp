#include "casimir/hamaker.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"

namespace casimir {

using constants::hbar;
using constants::pi;

double HamakerResult::textbook() const { return 2.0 * pi * h123; }

namespace {

constexpr int kMaxTerms = 64;
constexpr double kSeriesTol = 1e-12;

}  // namespace

HamakerResult hamaker_constant(const TriLayer& stack, const QuadratureConfig& cfg) {
  validate(stack.body1);
  validate(stack.gap_medium);
  validate(stack.body3);
  cfg.validate();
  const double ws = std::max({characteristic_frequency(stack.body1),
                              characteristic_frequency(stack.gap_medium),
                              characteristic_frequency(stack.body3)});
  HamakerResult out;
  if (ws == 0.0) return out;

  auto product = [&](double xi) {
    const double e1 = eps_imag(stack.body1, xi);
    const double e2 = eps_imag(stack.gap_medium, xi);
    const double e3 = eps_imag(stack.body3, xi);
    return (e1 - e2) / (e1 + e2) * ((e3 - e2) / (e3 + e2));
  };

  // sup |D12 D32| on a wide log grid, used for the geometric tail bound
  double m = 0.0;
  for (int i = 0; i <= 2000; ++i) {
    const double xi = ws * std::pow(10.0, -8.0 + 12.0 * i / 2000.0);
    m = std::max(m, std::abs(product(xi)));
  }
  m = std::min(m, 1.0);

  QuadratureConfig qc = cfg;
  qc.abs_floor = 0.0;
  qc.compression_scale = ws;

  double sum = 0.0;
  double qerr = 0.0;
  double tail = 0.0;
  int n = 1;
  for (; n <= kMaxTerms; ++n) {
    const double nn = n;
    const Estimate t = integrate_semi_infinite(
        [&](double xi) { return std::pow(product(xi), n); }, 0.0, qc);
    // the absolute moment bounds every later term, also when D12 D32 changes sign
    const Estimate a = integrate_semi_infinite(
        [&](double xi) { return std::pow(std::abs(product(xi)), n); }, 0.0, qc);
    sum += t.value / (nn * nn * nn);
    qerr += t.error / (nn * nn * nn);
    double bound = a.value / (2.0 * nn * nn);
    if (m < 1.0) bound = std::min(bound, a.value * m / ((1.0 - m) * std::pow(nn + 1.0, 3)));
    tail = bound;
    if (bound < kSeriesTol * std::abs(sum) || a.value == 0.0) break;
  }
  const double pref = 3.0 * hbar / (8.0 * pi * pi);
  if (n > kMaxTerms) {
    // slow tail (|D12 D32| -> 1 for conductors): the remainder
    // sum_{n > N} p^n / n^3 = Li3(p) - partial sum, integrated in one go
    n = kMaxTerms;
    auto remainder = [&](double xi) {
      const double p = product(xi);
      double pw = 1.0;
      if (std::abs(p) <= 0.5) {
        for (int j = 1; j <= n; ++j) pw *= p;
        double r = 0.0;
        for (int j = n + 1; j < n + 2000; ++j) {
          pw *= p;
          r += pw / (static_cast<double>(j) * j * j);
          if (std::abs(pw) < 1e-20 * std::abs(r) || pw == 0.0) break;
        }
        return r;
      }
      double partial = 0.0;
      for (int j = 1; j <= n; ++j) {
        pw *= p;
        partial += pw / (static_cast<double>(j) * j * j);
      }
      return polylog(3, p) - partial;
    };
    QuadratureConfig rc = qc;
    rc.rel_tol = std::max(cfg.rel_tol, 1e-12);
    // only the total has to be accurate
    rc.abs_floor = 1e-3 * rc.rel_tol * std::abs(sum);
    const Estimate r = integrate_semi_infinite(remainder, 0.0, rc);
    sum += r.value;
    tail = r.error + 1e-15 * kMaxTerms * std::abs(sum);
    if (!(tail <= std::max(cfg.rel_tol, 1e-12) * std::abs(sum) * 10.0))
      throw ConvergenceError("Hamaker series remainder did not converge", pref * sum, pref * tail);
  }
  out.h123 = pref * sum;
  out.series_terms_used = n;
  out.truncation_error = pref * tail;
  out.quadrature_error = pref * qerr;
  return out;
}

double hamaker_value(const HamakerResult& h, HamakerConvention conv) {
  return conv == HamakerConvention::Native ? h.h123 : h.textbook();
}

double short_distance_force(const HamakerResult& h, double L, HamakerConvention conv) {
  if (!(L > 0.0) || !std::isfinite(L)) throw DomainError("gap width must be finite and > 0");
  const double L3 = L * L * L;
  if (conv == HamakerConvention::Native) return -h.h123 / (3.0 * L3);
  return -h.textbook() / (6.0 * pi * L3);
}

}  // namespace casimir
