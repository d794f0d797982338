#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <sstream>
#include <thread>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"
#include "casimir/lifshitz.hpp"
#include "casimir/plasmon_energy.hpp"
#include "casimir_cli/cli.hpp"

namespace casimir::cli {

using constants::c;
using constants::pi;

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

std::string to_csv(const Table& t) {
  std::ostringstream os;
  for (std::size_t i = 0; i < t.header.size(); ++i) os << (i ? "," : "") << t.header[i];
  os << '\n';
  for (const auto& r : t.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
    os << '\n';
  }
  return os.str();
}

namespace {

int worker_count(const RunOptions& opt, std::size_t n) {
  int j = opt.jobs > 0 ? opt.jobs : static_cast<int>(std::thread::hardware_concurrency());
  return std::max(1, std::min<int>(j, static_cast<int>(n)));
}

// Runs f(i) for i < n on a pool; results land in slot i so completion order
// does not matter. An exception is kept per slot.
template <class R>
std::vector<R> parallel_map(std::size_t n, const RunOptions& opt, const std::function<R(std::size_t)>& f,
                            std::vector<std::string>& errors) {
  std::vector<R> out(n);
  std::vector<std::string> err(n);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        out[i] = f(i);
      } catch (const std::exception& e) {
        err[i] = e.what();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    const int w = worker_count(opt, n);
    for (int t = 1; t < w; ++t) pool.emplace_back(work);
    work();
  }
  errors = std::move(err);
  return out;
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  if (n == 1) return {lo};
  for (int i = 0; i < n; ++i) g[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
  g.back() = hi;
  return g;
}

QuadratureConfig with_tol(QuadratureConfig q, const RunOptions& opt) {
  if (opt.rel_tol) q.rel_tol = *opt.rel_tol;
  return q;
}

std::vector<std::string> nan_row(std::size_t n) { return std::vector<std::string>(n, "nan"); }

double plasma_frequency_of(const DielectricModel& m) {
  if (auto* p = std::get_if<Plasma>(&m)) return p->omega_p;
  if (auto* d = std::get_if<Drude>(&m)) return d->omega_p;
  if (auto* o = std::get_if<TwoOscillator>(&m)) return effective_plasma_frequency(*o);
  throw ConfigError("vacuum has no plasma frequency");
}

}  // namespace

std::vector<Fig1Case> fig1_cases(const Fig1Params& p, const RunOptions& opt) {
  std::vector<Fig1Case> cases{{"a", PlasmaTriple::from_ratios(p.alpha_a, p.beta_a, p.Lambda, p.omega_p1), {}, {}},
                              {"b", PlasmaTriple::from_ratios(p.alpha_b, p.beta_b, p.Lambda, p.omega_p1), {}, {}}};
  std::vector<double> k;
  for (double K : log_grid(p.k_min, p.k_max, p.k_count)) k.push_back(K * p.omega_p1 / c);
  std::vector<std::string> errors;
  auto res = parallel_map<std::pair<ModeBranch, ModeBranch>>(
      cases.size(), opt, [&](std::size_t i) { return coupled_branches(cases[i].triple, k); }, errors);
  for (std::size_t i = 0; i < cases.size(); ++i) {
    if (!errors[i].empty()) throw SolverError("fig1 case " + cases[i].label + ": " + errors[i], 0.0, 0.0, 0.0);
    cases[i].minus = std::move(res[i].first);
    cases[i].plus = std::move(res[i].second);
  }
  return cases;
}

Table cmd_fig1(const Fig1Params& p, const RunOptions& opt) {
  Table t;
  t.header = {"case", "curve", "K[k*c/omega_p1]", "w[omega/omega_p1]", "k[1/m]", "omega[rad/s]", "residual[1]"};
  std::vector<Fig1Case> cases;
  try {
    cases = fig1_cases(p, opt);
  } catch (const Error& e) {
    t.failures.push_back(e.what());
    return t;
  }
  const double wp1 = p.omega_p1;
  auto add = [&](const std::string& cs, const std::string& curve, double K, double w, double res) {
    t.rows.push_back({cs, curve, format_number(K), format_number(w), format_number(K * wp1 / c),
                      format_number(w * wp1), format_number(res)});
  };
  const std::vector<double> K = log_grid(p.k_min, p.k_max, p.k_count);
  for (const auto& cs : cases) {
    const double A2 = cs.triple.alpha() * cs.triple.alpha(), A3 = cs.triple.beta() * cs.triple.beta();
    for (const auto* br : {&cs.minus, &cs.plus})
      for (const auto& s : br->samples)
        add(cs.label, br == &cs.minus ? "omega_minus" : "omega_plus", s.k * c / wp1, s.omega / wp1, s.residual);
    // closed-form curves carry residual 0
    for (double k : K) {
      const double kk = k * wp1 / c;
      add(cs.label, "single_12", k, single_plasmon(wp1, cs.triple.omega_p2, kk) / wp1, 0.0);
      add(cs.label, "single_32", k, single_plasmon(cs.triple.omega_p3, cs.triple.omega_p2, kk) / wp1, 0.0);
      add(cs.label, "light_line_1", k, std::sqrt(k * k + 1.0), 0.0);
      add(cs.label, "light_line_2", k, std::sqrt(k * k + A2), 0.0);
      add(cs.label, "light_line_3", k, std::sqrt(k * k + A3), 0.0);
    }
    if (A2 > 1.0 && A3 > A2) {
      const double kp = onset_k_plus(cs.triple) * c / wp1;
      add(cs.label, "k_plus", kp, std::sqrt(kp * kp + 1.0), 0.0);
    }
    if (A2 < 1.0 && A3 >= 1.0) {
      const double pp = onset_p_plus(cs.triple) * c / wp1;
      add(cs.label, "p_plus", pp, std::sqrt(pp * pp + A2), 0.0);
    }
  }
  return t;
}

Table cmd_fig2(const Fig2Params& p, const RunOptions& opt) {
  Table t;
  t.header = {"L/lambda_p1[1]", "L[m]",          "Lambda[1]",           "eta_total[1]",
              "eta_plasmon[1]", "eta_plasmon_minus[1]", "eta_plasmon_plus[1]", "eta_photon[1]",
              "energy_total[J/m^2]", "energy_plasmon_minus[J/m^2]", "energy_plasmon_plus[J/m^2]"};
  const auto base = PlasmaTriple::from_ratios(p.alpha, p.beta, 1.0, p.omega_p1);
  const double lam = base.lambda_p1();
  const std::vector<double> x = log_grid(p.x_min, p.x_max, p.count);
  const QuadratureConfig q = with_tol(QuadratureConfig{1e-8}, opt);
  std::vector<std::string> errors;
  auto res = parallel_map<EnergyBreakdown>(
      x.size(), opt, [&](std::size_t i) { return energy_breakdown(base.with_gap(x[i] * lam), q); }, errors);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!errors[i].empty()) {
      auto row = nan_row(t.header.size());
      row[0] = format_number(x[i]);
      row[1] = format_number(x[i] * lam);
      t.rows.push_back(row);
      t.failures.push_back("fig2 point " + std::to_string(i) + " (L/lambda_p1=" + format_number(x[i]) +
                           "): " + errors[i]);
      continue;
    }
    const auto& b = res[i];
    t.rows.push_back({format_number(x[i]), format_number(b.gap), format_number(b.Lambda),
                      format_number(b.eta_total), format_number(b.eta_plasmon),
                      format_number(b.eta_plasmon_minus), format_number(b.eta_plasmon_plus),
                      format_number(b.eta_photon), format_number(b.total), format_number(b.plasmon_minus),
                      format_number(b.plasmon_plus)});
  }
  return t;
}

Table cmd_fig3(const Fig3Params& p, const PresetTable& presets, const RunOptions& opt) {
  Table t;
  t.header = {"L/lambda_p1[1]",  "plasma_L[m]",    "plasma_force[N/m^2]", "plasma_eta_force[1]",
              "plasma_asymptote[1]", "realistic_L[m]", "realistic_force[N/m^2]", "realistic_eta_force[1]",
              "realistic_asymptote[1]"};
  TriLayer toy{Plasma{p.omega_p1}, Plasma{p.alpha * p.omega_p1}, Plasma{p.beta * p.omega_p1}, 0.0};
  TriLayer real;
  double w1 = 0.0, slope_real = 0.0;
  try {
    real.body1 = resolve_material(p.realistic[0], presets);
    real.gap_medium = resolve_material(p.realistic[1], presets);
    real.body3 = resolve_material(p.realistic[2], presets);
    w1 = plasma_frequency_of(real.body1);
    slope_real = short_distance_slope(plasma_frequency_of(real.gap_medium) / w1,
                                      plasma_frequency_of(real.body3) / w1);
  } catch (const Error& e) {
    t.failures.push_back(std::string("fig3: ") + e.what());
    return t;
  }
  const double lam_toy = 2.0 * pi * c / p.omega_p1;
  const double lam_real = 2.0 * pi * c / w1;
  const double slope_toy = short_distance_slope(p.alpha, p.beta);
  const std::vector<double> x = log_grid(p.x_min, p.x_max, p.count);
  const QuadratureConfig q = with_tol(QuadratureConfig{1e-8}, opt);
  // one task per (point, stack)
  std::vector<std::string> errors;
  auto res = parallel_map<Estimate>(
      2 * x.size(), opt,
      [&](std::size_t j) {
        const std::size_t i = j / 2;
        return j % 2 == 0 ? lifshitz_pressure(toy.with_gap(x[i] * lam_toy), q)
                          : lifshitz_pressure(real.with_gap(x[i] * lam_real), q);
      },
      errors);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double Lt = x[i] * lam_toy, Lr = x[i] * lam_real;
    double ft = std::nan(""), fr = std::nan("");
    if (errors[2 * i].empty())
      ft = res[2 * i].value;
    else
      t.failures.push_back("fig3 plasma point " + std::to_string(i) + ": " + errors[2 * i]);
    if (errors[2 * i + 1].empty())
      fr = res[2 * i + 1].value;
    else
      t.failures.push_back("fig3 realistic point " + std::to_string(i) + ": " + errors[2 * i + 1]);
    t.rows.push_back({format_number(x[i]), format_number(Lt), format_number(ft),
                      format_number(ft / perfect_mirror_force(Lt)), format_number(slope_toy * x[i]),
                      format_number(Lr), format_number(fr), format_number(fr / perfect_mirror_force(Lr)),
                      format_number(slope_real * x[i])});
  }
  return t;
}

Table cmd_sweep(const ScenarioConfig& cfg, const RunOptions& opt) {
  Table t;
  t.header = {"L[m]"};
  const std::map<std::string, std::string> units{{"force", "force[N/m^2]"},
                                                 {"energy", "energy[J/m^2]"},
                                                 {"eta_force", "eta_force[1]"},
                                                 {"eta_energy", "eta_energy[1]"},
                                                 {"hamaker", "hamaker[J]"},
                                                 {"hamaker_force", "hamaker_force[N/m^2]"},
                                                 {"long_distance_force", "long_distance_force[N/m^2]"}};
  for (const auto& o : cfg.outputs) t.header.push_back(units.at(o));
  auto wants = [&](std::initializer_list<const char*> names) {
    for (const char* n : names)
      if (std::find(cfg.outputs.begin(), cfg.outputs.end(), n) != cfg.outputs.end()) return true;
    return false;
  };
  const TriLayer stack{cfg.stack[0], cfg.stack[1], cfg.stack[2], 0.0};
  const QuadratureConfig q = with_tol(cfg.quad, opt);

  std::optional<HamakerResult> ham;
  if (wants({"hamaker", "hamaker_force"})) {
    try {
      ham = hamaker_constant(stack.with_gap(1.0), with_tol(QuadratureConfig{1e-10}, opt));
    } catch (const Error& e) {
      t.failures.push_back(std::string("hamaker: ") + e.what());
    }
  }
  const bool need_energy = wants({"energy", "eta_energy"});
  const bool need_force = wants({"force", "eta_force"});

  const std::vector<double> L = cfg.grid.points();
  std::vector<std::string> errors;
  // a row plus the failures of individual cells in it
  using Row = std::pair<std::vector<std::string>, std::vector<std::string>>;
  auto res = parallel_map<Row>(
      L.size(), opt,
      [&](std::size_t i) {
        const TriLayer s = stack.with_gap(L[i]);
        std::optional<Estimate> f, e;
        if (need_force) f = lifshitz_pressure(s, q);
        if (need_energy) e = lifshitz_energy(s, q);
        Row r;
        r.first.push_back(format_number(L[i]));
        for (const auto& o : cfg.outputs) {
          double v = std::nan("");
          try {
            if (o == "force") v = f->value;
            else if (o == "energy") v = e->value;
            else if (o == "eta_force") v = f->value / perfect_mirror_force(L[i]);
            else if (o == "eta_energy") v = e->value / perfect_mirror_energy(L[i]);
            else if (o == "hamaker" && ham) v = hamaker_value(*ham, opt.convention);
            else if (o == "hamaker_force" && ham) v = short_distance_force(*ham, L[i], opt.convention);
            else if (o == "long_distance_force") v = long_distance_estimate(s);
          } catch (const Error& ex) {
            r.second.push_back(o + ": " + ex.what());
          }
          r.first.push_back(format_number(v));
        }
        return r;
      },
      errors);
  for (std::size_t i = 0; i < L.size(); ++i) {
    const std::string id = "sweep point " + std::to_string(i) + " (L=" + format_number(L[i]) + " m): ";
    if (!errors[i].empty()) {
      auto row = nan_row(t.header.size());
      row[0] = format_number(L[i]);
      t.rows.push_back(row);
      t.failures.push_back(id + errors[i]);
      continue;
    }
    for (const auto& m : res[i].second) t.failures.push_back(id + m);
    t.rows.push_back(std::move(res[i].first));
  }
  return t;
}

Table cmd_materials(const PresetTable& presets) {
  Table t;
  t.header = {"name", "model"};
  for (const auto& [name, m] : presets) t.rows.push_back({name, "\"" + describe(m) + "\""});
  return t;
}

}  // namespace casimir::cli
