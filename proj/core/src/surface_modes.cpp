#include "casimir/surface_modes.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"
#include "dispersion_terms.hpp"

namespace casimir {

using constants::c;
using constants::pi;
using cplx = std::complex<double>;

PlasmaTriple PlasmaTriple::from_ratios(double alpha, double beta, double Lambda, double omega_p1) {
  PlasmaTriple p{omega_p1, alpha * omega_p1, beta * omega_p1, Lambda * c / omega_p1};
  p.validate();
  return p;
}

double PlasmaTriple::Lambda() const { return omega_p1 * gap / c; }
double PlasmaTriple::lambda_p1() const { return 2.0 * pi * c / omega_p1; }

PlasmaTriple PlasmaTriple::with_gap(double L) const {
  PlasmaTriple p = *this;
  p.gap = L;
  return p;
}

void PlasmaTriple::validate() const {
  if (!(omega_p1 > 0.0) || !std::isfinite(omega_p1))
    throw DomainError("omega_p1 must be finite and > 0");
  for (double w : {omega_p2, omega_p3})
    if (!(w >= 0.0) || !std::isfinite(w)) throw DomainError("plasma frequencies must be finite and >= 0");
  if (!(gap > 0.0) || !std::isfinite(gap)) throw DomainError("gap width must be finite and > 0");
}

double single_plasmon(double omega_pi, double omega_p2, double k) {
  if (!(omega_pi >= 0.0) || !(omega_p2 >= 0.0)) throw DomainError("plasma frequencies must be >= 0");
  if (!(k >= 0.0)) throw DomainError("wavevector must be >= 0");
  const double kc = k * c;
  return std::sqrt(detail::single_u(omega_pi * omega_pi, omega_p2 * omega_p2, kc));
}

namespace {

bool same(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b)); }

double sign_of(double x) { return x < 0.0 ? -1.0 : 1.0; }

}  // namespace

//****************************************************************************

CoupledModeSolver::CoupledModeSolver(const PlasmaTriple& p, const RootConfig& cfg) : cfg_(cfg) {
  p.validate();
  cfg.validate();
  A_[0] = 1.0;
  A_[1] = p.alpha() * p.alpha();
  A_[2] = p.beta() * p.beta();
  Lambda_ = p.Lambda();
  zero_contrast_ = same(A_[0], A_[1]) || same(A_[2], A_[1]);

  // pairing of each branch with a single-interface plasmon, read off far out
  // in K where the interfaces decouple
  pair_minus_ = A_[0] <= A_[2] ? 1 : 3;
  pair_plus_ = A_[0] <= A_[2] ? 3 : 1;
  if (same(A_[0], A_[2])) {
    pair_minus_ = pair_plus_ = 1;
  } else if (!zero_contrast_) {
    const double amax = std::sqrt(std::max({A_[0], A_[1], A_[2]}));
    const double Kfar = std::max(60.0 / Lambda_, 10.0 * amax);
    const std::vector<double> r = roots(Kfar);
    if (!r.empty()) {
      const double d1 = std::abs(r[0] - single(1, Kfar));
      const double d3 = std::abs(r[0] - single(3, Kfar));
      pair_minus_ = d1 <= d3 ? 1 : 3;
      pair_plus_ = pair_minus_ == 1 ? 3 : 1;
    }
  }
  onset_[0] = compute_onset(Branch::Minus);
  onset_[1] = compute_onset(Branch::Plus);
}

double CoupledModeSolver::residual(double K, double w) const {
  return detail::residual_terms(w * w, Lambda_, K, A_).sum();
}

// Componentwise backward error: |R| over the same terms rebuilt from
// |inputs|, e_j -> u + A_j and q_j -> sqrt(K^2 + A_j + u). Near a light line
// q_j comes out of a cancellation, and the rounding of w alone moves R by more
// than the plain sum of |terms|.
double CoupledModeSolver::normalized_residual(double K, double w) const {
  const double u = w * w;
  const double K2 = K * K;
  const auto t = detail::residual_terms(u, Lambda_, K, A_);
  double ea[3];
  double qa[3];
  for (int j = 0; j < 3; ++j) {
    ea[j] = u + A_[j];
    qa[j] = std::sqrt(K2 + A_[j] + u);
  }
  const double q2sq = K2 - u + A_[1];
  double s1 = 0.0;  // |factor| of the e2^2 q1 q3 term
  double s2 = 1.0;  // of the middle term
  double s3 = 0.0;  // of the e1 e3 term, without its q2
  if (q2sq >= 0.0) {
    const double q2 = std::sqrt(q2sq);
    const double th = std::tanh(q2 * Lambda_);
    s1 = q2 == 0.0 ? Lambda_ : th / q2;
    s3 = th;
  } else {
    const double p = std::sqrt(-q2sq);
    s1 = std::abs(std::sin(p * Lambda_) / p);
    s2 = std::abs(std::cos(p * Lambda_));
    s3 = std::abs(std::sin(p * Lambda_));
  }
  const double scale = ea[1] * ea[1] * qa[0] * qa[2] * s1 +
                       ea[1] * (ea[2] * qa[0] + ea[0] * qa[2]) * s2 + ea[0] * ea[2] * qa[1] * s3;
  return scale == 0.0 ? 0.0 : std::abs(t.sum()) / scale;
}

double CoupledModeSolver::single(int interface, double K) const {
  const double Ai = interface == 1 ? A_[0] : A_[2];
  return std::sqrt(detail::single_u(Ai, A_[1], K));
}

double CoupledModeSolver::window_top(double K) const {
  const double amax = std::sqrt(std::max({A_[0], A_[1], A_[2]}));
  return std::min(std::sqrt(K * K + std::min(A_[0], A_[2])), amax);
}

// u and q_j^2 at w, exact at the window top: on the light line of the lighter
// body its q is zero and the others are A_j - A_min. Branches hugging that
// light line at small K sit closer to it than w can resolve.
CoupledModeSolver::Point CoupledModeSolver::point(double K, double w) const {
  const double K2 = K * K;
  const double amin = std::min(A_[0], A_[2]);
  const double amax2 = std::max({A_[0], A_[1], A_[2]});
  Point pt;
  if (w == window_top(K) && K2 + amin < amax2) {
    pt.u = K2 + amin;
    for (int j = 0; j < 3; ++j) pt.qsq[j] = A_[j] - amin;
  } else {
    pt.u = w == window_top(K) ? amax2 : w * w;
    for (int j = 0; j < 3; ++j) pt.qsq[j] = K2 - pt.u + A_[j];
  }
  return pt;
}

double CoupledModeSolver::edge_residual(double K, double w) const {
  const Point pt = point(K, w);
  return detail::residual_terms_q(pt.u, pt.qsq, Lambda_, A_).sum();
}

std::vector<double> CoupledModeSolver::roots(double K) const {
  const double top = window_top(K);
  const int n = cfg_.scan_steps;
  std::vector<double> nodes;
  nodes.reserve(n + 2);
  for (int i = 1; i <= n; ++i) nodes.push_back(top * i / n);
  nodes.back() = top;
  // roots close to w = 0 appear at small K when a layer has a low plasma
  // frequency; refine the first cell geometrically
  for (int i = 1; i <= 24; ++i) nodes.push_back(top / n * std::pow(10.0, -i / 3.0));
  for (int j : {1, 3}) {
    const double s = single(j, K);
    if (s > 0.0 && s < top) nodes.push_back(s);
  }
  // above the gap light line the residual oscillates in p Lambda, p^2 = u - K^2 - A2;
  // quarter-period nodes keep neighbouring waveguide roots in separate cells
  const double u_gap = K * K + A_[1];
  if (u_gap < top * top) {
    nodes.push_back(std::sqrt(u_gap));
    const double pmax = std::sqrt(top * top - u_gap);
    const double step = 0.25 * constants::pi / Lambda_;
    const int m_max = static_cast<int>(std::min(pmax / step, 1e5));
    for (int m = 1; m <= m_max; ++m) {
      const double pm = m * step;
      nodes.push_back(std::sqrt(u_gap + pm * pm));
    }
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

  RootConfig rc = cfg_;
  rc.rel_tol = std::min(rc.rel_tol, 1e-15);
  std::vector<double> out;
  auto scan = [&](const auto& f) {
    std::vector<double> vals(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) vals[i] = f(nodes[i]);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (vals[i] == 0.0) {
        out.push_back(nodes[i]);
        continue;
      }
      if (i + 1 < nodes.size() && vals[i + 1] != 0.0 && sign_of(vals[i]) != sign_of(vals[i + 1]))
        out.push_back(find_root_bracketed(f, nodes[i], nodes[i + 1], rc).value);
    }
  };
  if (same(A_[0], A_[2]) && !zero_contrast_) {
    // equal bodies: the relation splits into even and odd factors whose roots
    // stay separate even when they agree to all printed digits
    scan([&](double w) { return symmetric_factor(point(K, w), true); });
    scan([&](double w) { return symmetric_factor(point(K, w), false); });
    std::sort(out.begin(), out.end());
  } else {
    scan([&](double w) { return edge_residual(K, w); });
  }
  return out;
}

double CoupledModeSolver::symmetric_factor(const Point& pt, bool even) const {
  const double u = pt.u;
  const double e1 = u - A_[0];
  const double e2 = u - A_[1];
  const double q1 = std::sqrt(std::max(pt.qsq[0], 0.0));
  const double q2sq = pt.qsq[1];
  if (q2sq >= 0.0) {
    const double q2 = std::sqrt(q2sq);
    const double t = std::tanh(0.5 * q2 * Lambda_);
    // the odd factor is divided by q2 to drop its zero on the gap light line
    const double t_q = q2 == 0.0 ? 0.5 * Lambda_ : t / q2;
    return even ? e2 * q1 + e1 * q2 * t : e2 * q1 * t_q + e1;
  }
  const double p = std::sqrt(-q2sq);
  const double sn = std::sin(0.5 * p * Lambda_);
  const double cs = std::cos(0.5 * p * Lambda_);
  return even ? e2 * q1 * cs - e1 * p * sn : e2 * q1 * sn / p + e1 * cs;
}

std::optional<double> CoupledModeSolver::frequency(Branch b, double K) const {
  const std::vector<double> r = roots(K);
  const std::size_t idx = b == Branch::Minus ? 0 : 1;
  if (r.size() <= idx) return std::nullopt;
  return r[idx];
}

double CoupledModeSolver::compute_onset(Branch b) const {
  const std::size_t idx = b == Branch::Minus ? 0 : 1;
  const double amax = std::sqrt(std::max({A_[0], A_[1], A_[2]}));
  const double Kfar = std::max(60.0 / Lambda_, 10.0 * amax);
  const double Klo = 1e-7;
  const int steps = 400;
  double prev = 0.0;
  for (int i = 0; i <= steps; ++i) {
    const double K = Klo * std::pow(Kfar / Klo, static_cast<double>(i) / steps);
    if (roots(K).size() > idx) {
      if (i == 0) return 0.0;
      // the new root leaves the window top exactly at the onset
      auto edge = [&](double k) { return edge_residual(k, window_top(k)); };
      const double fa = edge(prev);
      const double fb = edge(K);
      if (fa != 0.0 && fb != 0.0 && sign_of(fa) != sign_of(fb)) {
        RootConfig rc = cfg_;
        rc.rel_tol = 1e-15;
        return find_root_bracketed(edge, prev, K, rc).value;
      }
      double lo = prev;
      double hi = K;
      for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (roots(mid).size() > idx)
          hi = mid;
        else
          lo = mid;
      }
      return hi;
    }
    prev = K;
  }
  return std::numeric_limits<double>::infinity();
}

double CoupledModeSolver::onset(Branch b) const { return onset_[b == Branch::Minus ? 0 : 1]; }

std::optional<double> CoupledModeSolver::polish(int i, double K, double w_root) const {
  if (zero_contrast_ || same(A_[0], A_[2])) return std::nullopt;
  const double u_r = w_root * w_root;
  if (K * K - u_r + A_[1] <= 0.0) return std::nullopt;
  const double Ai = i == 1 ? A_[0] : A_[2];
  const int j = i == 1 ? 3 : 1;
  const double s = detail::single_u(Ai, A_[1], K);
  const double sp = detail::single_u_partner(Ai, A_[1], K);
  // G (e2 q_i - e_i q2) with the vanishing factor of D_i pulled out as x
  auto H = [&](double x) {
    const double u = s + x;
    const auto g = detail::gap_factors(u, Lambda_, K, A_);
    const double qi = i == 1 ? g.q1 : g.q3;
    const double ei = i == 1 ? g.e1 : g.e3;
    const double Dj = j == 1 ? g.D1 : g.D3;
    return x * (A_[1] - Ai) * (u - sp) * Dj - g.delta * g.N * (g.e2 * qi - ei * g.q2);
  };
  const double x0 = u_r - s;
  double hw = 1e-10 * u_r + 1e-3 * std::abs(x0);
  double lo = x0 - hw;
  double hi = x0 + hw;
  double flo = H(lo);
  double fhi = H(hi);
  int tries = 0;
  while (sign_of(flo) == sign_of(fhi) && flo != 0.0 && fhi != 0.0) {
    if (++tries > 30) return std::nullopt;
    hw *= 4.0;
    lo = x0 - hw;
    hi = x0 + hw;
    flo = H(lo);
    fhi = H(hi);
  }
  RootConfig rc;
  rc.rel_tol = 1e-14;
  rc.max_iter = 400;
  double x = 0.0;
  try {
    x = find_root_bracketed(H, lo, hi, rc).value;
  } catch (const Error&) {
    return std::nullopt;
  }
  if (std::abs(x - x0) > 1e-9 * u_r) return std::nullopt;
  return x / (std::sqrt(s + x) + std::sqrt(s));
}

std::optional<CoupledModeSolver::Offset> CoupledModeSolver::offset(Branch b, double K) const {
  std::optional<double> w = frequency(b, K);
  const double K0 = onset(b);
  if (!w) {
    // just above the onset the root sits closer to the window top than the
    // scan can resolve
    if (K0 > 0.0 && K >= K0 && K <= K0 * (1.0 + 1e-6))
      w = window_top(K);
    else
      return std::nullopt;
  }
  Offset o;
  o.interface = paired_interface(b);
  o.single = single(o.interface, K);
  o.w = *w;
  o.delta = *w - o.single;
  if (const auto x = polish(o.interface, K, *w)) {
    o.delta = *x;
    o.w = o.single + *x;
  }
  return o;
}

double CoupledModeSolver::dw_dLambda(double K, double w) const {
  const double u = w * w;
  const double h = 1e-20 * std::max(u, 1.0);
  double du = 0.0;
  if (K * K - u + A_[1] > 0.0) {
    const auto g = detail::gap_factors(u, Lambda_, K, A_);
    const double e = std::exp(-2.0 * g.q2 * Lambda_);
    const double sech2 = 4.0 * e / ((1.0 + e) * (1.0 + e));
    const double G_L = g.N * g.q2 * sech2;
    const auto gc = detail::gap_factors(cplx(u, h), Lambda_, K, A_);
    const double G_u = (gc.D1 * gc.D3 - gc.delta * gc.N).imag() / h;
    du = -G_L / G_u;
  } else {
    const double hl = 1e-20 * std::max(Lambda_, 1.0);
    const double R_u = detail::residual_terms(cplx(u, h), cplx(Lambda_, 0.0), K, A_).sum().imag() / h;
    const double R_L = detail::residual_terms(cplx(u, 0.0), cplx(Lambda_, hl), K, A_).sum().imag() / hl;
    du = -R_L / R_u;
  }
  return du / (2.0 * w);
}

//****************************************************************************

std::pair<ModeBranch, ModeBranch> coupled_branches(const PlasmaTriple& p,
                                                   std::span<const double> k_grid,
                                                   const RootConfig& cfg) {
  for (std::size_t i = 0; i < k_grid.size(); ++i) {
    if (!(k_grid[i] > 0.0) || !std::isfinite(k_grid[i]))
      throw DomainError("wavevector grid must be finite and positive");
    if (i > 0 && !(k_grid[i] > k_grid[i - 1]))
      throw DomainError("wavevector grid must be strictly increasing");
  }
  const CoupledModeSolver s(p, cfg);
  const double kunit = p.omega_p1 / c;
  ModeBranch minus;
  ModeBranch plus;
  minus.branch = Branch::Minus;
  plus.branch = Branch::Plus;
  minus.onset_k = s.onset(Branch::Minus) * kunit;
  plus.onset_k = s.onset(Branch::Plus) * kunit;
  minus.zero_contrast = plus.zero_contrast = s.zero_contrast();

  for (double k : k_grid) {
    const double K = k / kunit;
    if (s.zero_contrast()) {
      const int other = same(s.A(1), s.A(2)) ? 3 : 1;
      const double wm = s.window_top(K);
      const double wp = s.single(other, K);
      minus.samples.push_back({k, wm * p.omega_p1, 0.0});
      plus.samples.push_back({k, wp * p.omega_p1, 0.0});
      continue;
    }
    const std::vector<double> r = s.roots(K);
    if (r.size() > 0) minus.samples.push_back({k, r[0] * p.omega_p1, s.normalized_residual(K, r[0])});
    if (r.size() > 1) plus.samples.push_back({k, r[1] * p.omega_p1, s.normalized_residual(K, r[1])});
  }
  return {std::move(minus), std::move(plus)};
}

double onset_k_plus(const PlasmaTriple& p) {
  p.validate();
  const double A2 = p.alpha() * p.alpha();
  const double A3 = p.beta() * p.beta();
  if (!(A2 > 1.0 && A3 > A2)) throw DomainError("onset_k_plus needs omega_p1 < omega_p2 < omega_p3");
  const double q2 = std::sqrt(A2 - 1.0);
  const double q3 = std::sqrt(A3 - 1.0);
  const double T = std::tanh(q2 * p.Lambda());
  const double X = (A2 * q3 + A3 * q2 * T) / (q3 + q2 * T);
  return std::sqrt(X - 1.0) * p.omega_p1 / c;
}

double onset_p_plus(const PlasmaTriple& p) {
  p.validate();
  const double A2 = p.alpha() * p.alpha();
  const double A3 = p.beta() * p.beta();
  if (!(A2 < 1.0 && A3 >= 1.0)) throw DomainError("onset_p_plus needs omega_p2 < omega_p1 <= omega_p3");
  const double s1 = std::sqrt(1.0 - A2);
  const double s3 = std::sqrt(A3 - A2);
  const double P2 = ((A3 - A2) * s1 + (1.0 - A2) * s3) / (s1 + s3 + s1 * s3 * p.Lambda());
  return std::sqrt(P2) * p.omega_p1 / c;
}

SectorLabels classify_sectors(const PlasmaTriple& p, double k, double omega) {
  p.validate();
  if (!(k >= 0.0) || !(omega >= 0.0)) throw DomainError("k and omega must be >= 0");
  auto label = [&](double wp) {
    const double q2 = k * k - (omega * omega - wp * wp) / (c * c);
    return q2 < 0.0 ? Sector::Propagative : Sector::Evanescent;
  };
  return {label(p.omega_p2), label(p.omega_p1), label(p.omega_p3)};
}

}  // namespace casimir
