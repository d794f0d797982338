#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "casimir/errors.hpp"
#include "casimir_cli/cli.hpp"

namespace casimir::cli {

namespace pt = boost::property_tree;

namespace {

double to_double(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ConfigError("'" + key + "': not a number: '" + text + "'");
  }
  if (used != text.size()) throw ConfigError("'" + key + "': trailing characters in '" + text + "'");
  return v;
}

using Params = std::map<std::string, double>;

double take(Params& p, const std::string& model, const std::string& key) {
  auto it = p.find(key);
  if (it == p.end()) throw ConfigError(model + ": missing parameter '" + key + "'");
  const double v = it->second;
  p.erase(it);
  return v;
}

DielectricModel build_model(const std::string& kind, Params p) {
  DielectricModel m;
  if (kind == "vacuum") {
    m = Vacuum{};
  } else if (kind == "plasma") {
    m = Plasma{take(p, kind, "omega_p")};
  } else if (kind == "drude") {
    const double wp = take(p, kind, "omega_p");
    m = Drude{wp, take(p, kind, "gamma")};
  } else if (kind == "two-oscillator") {
    TwoOscillator o;
    o.c_ir = take(p, kind, "c_ir");
    o.omega_ir = take(p, kind, "omega_ir");
    o.c_uv = take(p, kind, "c_uv");
    o.omega_uv = take(p, kind, "omega_uv");
    m = o;
  } else {
    throw ConfigError("unknown model '" + kind + "'");
  }
  if (!p.empty()) throw ConfigError(kind + ": unknown parameter '" + p.begin()->first + "'");
  try {
    validate(m);
  } catch (const DomainError& e) {
    throw ConfigError(kind + ": " + e.what());
  }
  return m;
}

template <class T>
T get_or(const pt::ptree& t, const std::string& key, T fallback) {
  const auto v = t.get_optional<std::string>(key);
  if (!v) return fallback;
  const std::string s = boost::trim_copy(*v);
  if constexpr (std::is_same_v<T, int>) {
    const double d = to_double(key, s);
    if (d != std::floor(d)) throw ConfigError("'" + key + "': expected an integer");
    return static_cast<int>(d);
  } else if constexpr (std::is_same_v<T, std::string>) {
    return s;
  } else {
    return to_double(key, s);
  }
}

pt::ptree read_ini(const std::string& path) {
  pt::ptree tree;
  try {
    pt::read_ini(path, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(e.what());
  }
  return tree;
}

const pt::ptree& section(const pt::ptree& t, const std::string& name) {
  static const pt::ptree empty;
  const auto s = t.get_child_optional(name);
  return s ? *s : empty;
}

}  // namespace

void read_preset_file(const std::string& path, PresetTable& table) {
  const pt::ptree tree = read_ini(path);
  for (const auto& [name, body] : tree) {
    if (body.empty()) throw ConfigError(path + ": '" + name + "' is not a section");
    std::string kind;
    Params p;
    for (const auto& [key, val] : body) {
      const std::string v = boost::trim_copy(val.data());
      if (key == "model")
        kind = v;
      else
        p[key] = to_double(name + "." + key, v);
    }
    if (kind.empty()) throw ConfigError(path + ": preset '" + name + "' has no model");
    table[name] = build_model(kind, p);
  }
}

PresetTable load_presets() {
  PresetTable t;
  for (auto& [name, m] : builtin_presets()) t[name] = m;
  if (const char* extra = std::getenv("CASIMIR_LAYERS_PRESETS"); extra && *extra)
    read_preset_file(extra, t);
  return t;
}

DielectricModel resolve_material(const std::string& text_in, const PresetTable& table) {
  const std::string text = boost::trim_copy(text_in);
  if (auto it = table.find(text); it != table.end()) return it->second;
  const auto open = text.find('(');
  if (open == std::string::npos) {
    if (text == "vacuum") return Vacuum{};
    throw ConfigError("unknown material '" + text + "'");
  }
  if (text.back() != ')') throw ConfigError("material '" + text + "': missing ')'");
  const std::string kind = boost::trim_copy(text.substr(0, open));
  const std::string args = text.substr(open + 1, text.size() - open - 2);
  Params p;
  std::vector<std::string> parts;
  boost::split(parts, args, boost::is_any_of(","));
  for (std::string part : parts) {
    boost::trim(part);
    if (part.empty()) continue;
    const auto eq = part.find('=');
    if (eq == std::string::npos) throw ConfigError("material '" + text + "': expected key=value");
    const std::string key = boost::trim_copy(part.substr(0, eq));
    p[key] = to_double(key, boost::trim_copy(part.substr(eq + 1)));
  }
  return build_model(kind, p);
}

void DistanceGrid::validate() const {
  if (!(min > 0.0) || !std::isfinite(max)) throw ConfigError("grid: min must be > 0 and max finite");
  if (count < 1) throw ConfigError("grid: count must be >= 1");
  if (count >= 2 && !(max > min)) throw ConfigError("grid: max must exceed min");
}

std::vector<double> DistanceGrid::points() const {
  validate();
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = min;
    return out;
  }
  for (int i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / (count - 1);
    out[i] = log ? min * std::pow(max / min, t) : min + (max - min) * t;
  }
  out.back() = max;
  return out;
}

const std::vector<std::string>& known_outputs() {
  static const std::vector<std::string> v{"force", "energy", "eta_force", "eta_energy",
                                          "hamaker", "hamaker_force",
                                          "long_distance_force"};
  return v;
}

ScenarioConfig parse_scenario(std::istream& in, const PresetTable& table) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(e.what());
  }
  ScenarioConfig cfg;
  const auto& st = section(tree, "stack");
  const char* keys[3] = {"body1", "gap", "body3"};
  for (int i = 0; i < 3; ++i) {
    cfg.names[i] = get_or<std::string>(st, keys[i], "");
    if (cfg.names[i].empty()) throw ConfigError(std::string("stack: missing '") + keys[i] + "'");
    cfg.stack[i] = resolve_material(cfg.names[i], table);
  }

  const auto& g = section(tree, "grid");
  cfg.grid.min = get_or(g, "min", 0.0);
  cfg.grid.max = get_or(g, "max", cfg.grid.min);
  cfg.grid.count = get_or(g, "count", 1);
  const std::string spacing = get_or<std::string>(g, "spacing", "log");
  if (spacing != "log" && spacing != "linear") throw ConfigError("grid: spacing must be log or linear");
  cfg.grid.log = spacing == "log";
  cfg.grid.validate();

  const std::string q = get_or<std::string>(section(tree, "outputs"), "quantities", "force,eta_force");
  boost::split(cfg.outputs, q, boost::is_any_of(","));
  for (auto& o : cfg.outputs) {
    boost::trim(o);
    if (std::find(known_outputs().begin(), known_outputs().end(), o) == known_outputs().end())
      throw ConfigError("outputs: unknown quantity '" + o + "'");
  }

  const auto& qd = section(tree, "quadrature");
  cfg.quad.rel_tol = get_or(qd, "rel_tol", cfg.quad.rel_tol);
  cfg.quad.abs_floor = get_or(qd, "abs_floor", cfg.quad.abs_floor);
  cfg.quad.max_depth = get_or(qd, "max_depth", cfg.quad.max_depth);
  const auto& rt = section(tree, "roots");
  cfg.roots.rel_tol = get_or(rt, "rel_tol", cfg.roots.rel_tol);
  cfg.roots.max_iter = get_or(rt, "max_iter", cfg.roots.max_iter);
  cfg.roots.scan_steps = get_or(rt, "scan_steps", cfg.roots.scan_steps);
  try {
    cfg.quad.validate();
    cfg.roots.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  cfg.out_path = get_or<std::string>(section(tree, "output"), "path", "");
  return cfg;
}

ScenarioConfig load_scenario(const std::string& path, const PresetTable& table) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  return parse_scenario(in, table);
}

Fig1Params load_fig1(const std::string& path) {
  Fig1Params p;
  if (path.empty()) return p;
  const pt::ptree tree = read_ini(path);
  const auto& s = section(tree, "fig1");
  p.alpha_a = get_or(s, "alpha_a", p.alpha_a);
  p.beta_a = get_or(s, "beta_a", p.beta_a);
  p.alpha_b = get_or(s, "alpha_b", p.alpha_b);
  p.beta_b = get_or(s, "beta_b", p.beta_b);
  p.Lambda = get_or(s, "lambda", p.Lambda);
  p.k_min = get_or(s, "k_min", p.k_min);
  p.k_max = get_or(s, "k_max", p.k_max);
  p.k_count = get_or(s, "k_count", p.k_count);
  p.omega_p1 = get_or(s, "omega_p1", p.omega_p1);
  if (!(p.k_min > 0.0 && p.k_max > p.k_min && p.k_count >= 2))
    throw ConfigError("fig1: need 0 < k_min < k_max and k_count >= 2");
  return p;
}

Fig2Params load_fig2(const std::string& path) {
  Fig2Params p;
  if (path.empty()) return p;
  const pt::ptree tree = read_ini(path);
  const auto& s = section(tree, "fig2");
  p.alpha = get_or(s, "alpha", p.alpha);
  p.beta = get_or(s, "beta", p.beta);
  p.omega_p1 = get_or(s, "omega_p1", p.omega_p1);
  p.x_min = get_or(s, "x_min", p.x_min);
  p.x_max = get_or(s, "x_max", p.x_max);
  p.count = get_or(s, "count", p.count);
  if (!(p.x_min > 0.0 && p.x_max >= p.x_min && p.count >= 1)) throw ConfigError("fig2: bad distance grid");
  return p;
}

Fig3Params load_fig3(const std::string& path) {
  Fig3Params p;
  if (path.empty()) return p;
  const pt::ptree tree = read_ini(path);
  const auto& s = section(tree, "fig3");
  p.alpha = get_or(s, "alpha", p.alpha);
  p.beta = get_or(s, "beta", p.beta);
  p.omega_p1 = get_or(s, "omega_p1", p.omega_p1);
  p.realistic[0] = get_or(s, "body1", p.realistic[0]);
  p.realistic[1] = get_or(s, "gap", p.realistic[1]);
  p.realistic[2] = get_or(s, "body3", p.realistic[2]);
  p.x_min = get_or(s, "x_min", p.x_min);
  p.x_max = get_or(s, "x_max", p.x_max);
  p.count = get_or(s, "count", p.count);
  if (!(p.x_min > 0.0 && p.x_max >= p.x_min && p.count >= 1)) throw ConfigError("fig3: bad distance grid");
  return p;
}

}  // namespace casimir::cli
