#pragma once

#include <functional>

namespace casimir {

struct [[nodiscard]] Estimate {
  double value = 0.0;
  double error = 0.0;
};

struct QuadratureConfig {
  double rel_tol = 1e-6;
  double abs_floor = 1e-18;   // absolute error floor, in the units of the result
  int max_depth = 40;         // bisection levels below an initial panel
  double compression_scale = 1.0;
  int initial_panels = 4;

  void validate() const;
};

struct RootConfig {
  double rel_tol = 1e-12;
  int max_iter = 200;
  int scan_steps = 400;

  void validate() const;
};

using ScalarFunction = std::function<double(double)>;

// Globally adaptive 21-point Gauss-Kronrod on [a, b].
Estimate integrate_interval(const ScalarFunction& f, double a, double b,
                            const QuadratureConfig& cfg = {});

// Integral over [lower, inf) after the map x = lower + s t / (1 - t),
// s = cfg.compression_scale.
Estimate integrate_semi_infinite(const ScalarFunction& f, double lower,
                                 const QuadratureConfig& cfg = {});

inline Estimate integrate_semi_infinite(const ScalarFunction& f,
                                        const QuadratureConfig& cfg = {}) {
  return integrate_semi_infinite(f, 0.0, cfg);
}

// Root of g inside [lo, hi]. The result never leaves the bracket; error is
// half the width of the final bracket.
Estimate find_root_bracketed(const ScalarFunction& g, double lo, double hi,
                             const RootConfig& cfg = {});

// E1(x) for x > 0.
double expint_e1(double x);

// Li_s(x) for integer s >= 1 and |x| <= 1.
double polylog(int s, double x);

}  // namespace casimir
