#include "casimir/numerics.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include <boost/math/special_functions/expint.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "casimir/errors.hpp"

namespace casimir {

void QuadratureConfig::validate() const {
  if (!(rel_tol > 0.0 && rel_tol < 1.0))
    throw DomainError("quadrature rel_tol must lie in (0, 1)");
  if (!(abs_floor >= 0.0) || !std::isfinite(abs_floor))
    throw DomainError("quadrature abs_floor must be finite and >= 0");
  if (max_depth < 4) throw DomainError("quadrature max_depth must be >= 4");
  if (!(compression_scale > 0.0) || !std::isfinite(compression_scale))
    throw DomainError("quadrature compression_scale must be finite and > 0");
  if (initial_panels < 1) throw DomainError("quadrature initial_panels must be >= 1");
}

void RootConfig::validate() const {
  if (!(rel_tol > 0.0 && rel_tol < 1.0))
    throw DomainError("root rel_tol must lie in (0, 1)");
  if (max_iter < 1) throw DomainError("root max_iter must be >= 1");
  if (scan_steps < 16) throw DomainError("root scan_steps must be >= 16");
}

namespace {

//****************************************************************************
// 10/21 point Gauss-Kronrod panel. Node tables come from Boost.Math, the
// error estimate follows QUADPACK's qk21.

struct Rule {
  std::array<double, 11> x{};   // kronrod abscissae on [0, 1], x[0] = 0
  std::array<double, 11> wk{};  // kronrod weights
  std::array<double, 11> wg{};  // gauss weights at the same index, 0 if absent
};

const Rule& rule() {
  static const Rule r = [] {
    using K = boost::math::quadrature::gauss_kronrod<double, 21>;
    using G = boost::math::quadrature::gauss<double, 10>;
    Rule out;
    const auto& xa = K::abscissa();
    const auto& wa = K::weights();
    const auto& ga = G::weights();
    for (std::size_t i = 0; i < 11; ++i) {
      out.x[i] = xa[i];
      out.wk[i] = wa[i];
      out.wg[i] = (i % 2 == 1) ? ga[i / 2] : 0.0;
    }
    return out;
  }();
  return r;
}

struct Panel {
  double a = 0.0;
  double b = 0.0;
  double value = 0.0;
  double error = 0.0;
  int depth = 0;
};

struct LargerError {
  bool operator()(const Panel& l, const Panel& r) const { return l.error < r.error; }
};

Panel evaluate(const ScalarFunction& f, double a, double b, int depth) {
  const Rule& R = rule();
  const double centr = 0.5 * (a + b);
  const double hlgth = 0.5 * (b - a);
  std::array<double, 11> fp{};
  std::array<double, 11> fm{};
  const double fc = f(centr);
  double resk = R.wk[0] * fc;
  double resg = 0.0;
  double resabs = std::abs(resk);
  for (std::size_t i = 1; i < 11; ++i) {
    const double dx = hlgth * R.x[i];
    fp[i] = f(centr + dx);
    fm[i] = f(centr - dx);
    resk += R.wk[i] * (fp[i] + fm[i]);
    resg += R.wg[i] * (fp[i] + fm[i]);
    resabs += R.wk[i] * (std::abs(fp[i]) + std::abs(fm[i]));
  }
  const double reskh = 0.5 * resk;
  double resasc = R.wk[0] * std::abs(fc - reskh);
  for (std::size_t i = 1; i < 11; ++i)
    resasc += R.wk[i] * (std::abs(fp[i] - reskh) + std::abs(fm[i] - reskh));

  const double ah = std::abs(hlgth);
  resk *= hlgth;
  resabs *= ah;
  resasc *= ah;
  double err = std::abs((resk - resg * hlgth));
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr double tiny = std::numeric_limits<double>::min();
  if (resabs > tiny / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
  if (!std::isfinite(resk) || !std::isfinite(err))
    throw DomainError("integrand is not finite on [" + std::to_string(a) + ", " +
                      std::to_string(b) + "]");
  return {a, b, resk, err, depth};
}

constexpr std::size_t kMaxPanels = 200000;

}  // namespace

Estimate integrate_interval(const ScalarFunction& f, double a, double b,
                            const QuadratureConfig& cfg) {
  cfg.validate();
  if (!std::isfinite(a) || !std::isfinite(b)) throw DomainError("integration limits must be finite");
  if (a == b) return {0.0, 0.0};
  if (b < a) {
    Estimate r = integrate_interval(f, b, a, cfg);
    return {-r.value, r.error};
  }

  std::priority_queue<Panel, std::vector<Panel>, LargerError> active;
  std::vector<Panel> frozen;
  double value = 0.0;
  double error = 0.0;
  const double h = (b - a) / cfg.initial_panels;
  for (int i = 0; i < cfg.initial_panels; ++i) {
    const double lo = a + i * h;
    const double hi = (i + 1 == cfg.initial_panels) ? b : a + (i + 1) * h;
    Panel p = evaluate(f, lo, hi, 0);
    value += p.value;
    error += p.error;
    active.push(p);
  }

  std::size_t count = active.size();
  while (error > std::max(cfg.rel_tol * std::abs(value), cfg.abs_floor)) {
    if (active.empty() || count > kMaxPanels) {
      throw ConvergenceError("adaptive quadrature did not converge on [" + std::to_string(a) + ", " +
                                 std::to_string(b) + "]",
                             value, error);
    }
    Panel p = active.top();
    active.pop();
    if (p.depth >= cfg.max_depth) {
      frozen.push_back(p);
      continue;
    }
    const double mid = 0.5 * (p.a + p.b);
    Panel l = evaluate(f, p.a, mid, p.depth + 1);
    Panel r = evaluate(f, mid, p.b, p.depth + 1);
    value += l.value + r.value - p.value;
    error += l.error + r.error - p.error;
    active.push(l);
    active.push(r);
    ++count;
    // re-sum now and then so that the running totals do not drift
    if (count % 256 == 0) {
      value = 0.0;
      error = 0.0;
      auto copy = active;
      while (!copy.empty()) {
        value += copy.top().value;
        error += copy.top().error;
        copy.pop();
      }
      for (const Panel& q : frozen) {
        value += q.value;
        error += q.error;
      }
    }
  }

  double v = 0.0;
  double e = 0.0;
  while (!active.empty()) {
    v += active.top().value;
    e += active.top().error;
    active.pop();
  }
  for (const Panel& q : frozen) {
    v += q.value;
    e += q.error;
  }
  return {v, e};
}

Estimate integrate_semi_infinite(const ScalarFunction& f, double lower,
                                 const QuadratureConfig& cfg) {
  cfg.validate();
  if (!std::isfinite(lower)) throw DomainError("lower limit must be finite");
  const double s = cfg.compression_scale;
  auto g = [&](double t) {
    const double om = 1.0 - t;
    if (om <= 0.0) return 0.0;
    const double x = lower + s * t / om;
    if (!std::isfinite(x)) return 0.0;
    const double v = f(x);
    if (v == 0.0) return 0.0;
    return v * s / (om * om);
  };
  return integrate_interval(g, 0.0, 1.0, cfg);
}

Estimate find_root_bracketed(const ScalarFunction& g, double lo, double hi,
                             const RootConfig& cfg) {
  cfg.validate();
  if (!std::isfinite(lo) || !std::isfinite(hi)) throw DomainError("root bracket must be finite");
  if (hi < lo) std::swap(lo, hi);
  const double flo = g(lo);
  const double fhi = g(hi);
  if (std::isnan(flo) || std::isnan(fhi)) throw DomainError("function is NaN at the bracket ends");
  if (flo == 0.0) return {lo, 0.0};
  if (fhi == 0.0) return {hi, 0.0};
  if ((flo < 0.0) == (fhi < 0.0))
    throw BracketError("no sign change on [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");

  const double rt = cfg.rel_tol;
  auto tol = [rt](double a, double b) {
    const double w = std::abs(b - a);
    return w <= rt * std::min(std::abs(a), std::abs(b)) ||
           w <= std::numeric_limits<double>::min();
  };
  std::uintmax_t iters = static_cast<std::uintmax_t>(cfg.max_iter);
  std::pair<double, double> r;
  try {
    r = boost::math::tools::toms748_solve(g, lo, hi, flo, fhi, tol, iters);
  } catch (const std::exception& e) {
    throw BracketError(std::string("bracketing solver failed: ") + e.what());
  }
  // report the end of the final bracket with the smaller residual
  const double ga = std::abs(g(r.first));
  const double gb = std::abs(g(r.second));
  double root = ga <= gb ? r.first : r.second;
  double err = std::abs(r.second - r.first);
  if (std::min(ga, gb) == 0.0) err = 0.0;
  root = std::clamp(root, lo, hi);
  if (err > 0.0 && !tol(r.first, r.second))
    throw ConvergenceError("root finder hit the iteration cap", root, err);
  return {root, err};
}

double expint_e1(double x) {
  if (!(x > 0.0)) throw DomainError("E1 requires x > 0");
  // std::expint loses ~3 digits above x ~ 50 in libstdc++, boost does not
  return boost::math::expint(1, x);
}

namespace {

constexpr int kZetaTerms = 60;

// zeta(s - k), k < kZetaTerms; the k = s - 1 slot is unused
std::array<double, kZetaTerms> make_zeta_row(int s) {
  std::array<double, kZetaTerms> row{};
  for (int k = 0; k < kZetaTerms; ++k)
    if (k != s - 1) row[k] = std::riemann_zeta(static_cast<double>(s - k));
  return row;
}

const std::array<double, kZetaTerms>& zeta_table(int s) {
  static const auto rows = [] {
    std::array<std::array<double, kZetaTerms>, 9> r{};
    for (int j = 1; j < 9; ++j) r[j] = make_zeta_row(j);
    return r;
  }();
  if (s < 9) return rows[s];
  thread_local std::map<int, std::array<double, kZetaTerms>> extra;
  auto it = extra.find(s);
  if (it == extra.end()) it = extra.emplace(s, make_zeta_row(s)).first;
  return it->second;
}

}  // namespace

double polylog(int s, double x) {
  if (s < 1) throw DomainError("polylog order must be >= 1");
  if (!(std::abs(x) <= 1.0)) throw DomainError("polylog requires |x| <= 1");
  if (x == 0.0) return 0.0;
  if (s == 1) {
    if (x == 1.0) throw DomainError("Li_1 diverges at 1");
    return -std::log1p(-x);
  }
  if (x == 1.0) return std::riemann_zeta(static_cast<double>(s));
  if (x == -1.0) return -(1.0 - std::pow(2.0, 1 - s)) * std::riemann_zeta(static_cast<double>(s));
  if (x < -0.5) return std::pow(2.0, 1 - s) * polylog(s, x * x) - polylog(s, -x);
  if (x > 0.5) {
    // expansion in mu = ln x, |mu| < ln 2; the zeta(s - k) mu^k / k! terms
    // shrink like (mu / 2 pi)^k
    const double mu = std::log(x);
    double harmonic = 0.0;
    for (int j = 1; j < s; ++j) harmonic += 1.0 / j;
    const std::array<double, kZetaTerms>& zeta = zeta_table(s);
    double sum = 0.0;
    double term = 1.0;  // mu^k / k!
    for (int k = 0; k < kZetaTerms; ++k) {
      if (k > 0) term *= mu / k;
      sum += k == s - 1 ? term * (harmonic - std::log(-mu)) : zeta[k] * term;
    }
    return sum;
  }
  double sum = 0.0;
  double p = 1.0;
  const double ax = std::abs(x);
  for (int n = 1; n < 100000000; ++n) {
    p *= x;
    const double nn = static_cast<double>(n);
    sum += p / std::pow(nn, s);
    const double next = std::abs(p) * ax;
    double tail = next / ((s - 1) * std::pow(nn, s - 1));
    if (ax < 1.0) tail = std::min(tail, next / (std::pow(nn + 1.0, s) * (1.0 - ax)));
    if (tail < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

}  // namespace casimir
