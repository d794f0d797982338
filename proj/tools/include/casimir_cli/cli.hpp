#pragma once

#include <array>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "casimir/dielectric.hpp"
#include "casimir/hamaker.hpp"
#include "casimir/numerics.hpp"
#include "casimir/surface_modes.hpp"

namespace casimir::cli {

using PresetTable = std::map<std::string, DielectricModel>;

// Built-in presets plus those in the file named by CASIMIR_LAYERS_PRESETS.
PresetTable load_presets();
// Sections of an INI file, each `model = plasma|drude|two-oscillator|vacuum`
// with the parameters of that model as keys.
void read_preset_file(const std::string& path, PresetTable& table);

// "gold-drude", or inline "drude(omega_p=1.37e16, gamma=5.32e13)".
DielectricModel resolve_material(const std::string& text, const PresetTable& table);

struct DistanceGrid {
  double min = 0.0;
  double max = 0.0;
  int count = 0;
  bool log = true;

  void validate() const;
  std::vector<double> points() const;
};

struct ScenarioConfig {
  std::array<std::string, 3> names;
  std::array<DielectricModel, 3> stack;
  DistanceGrid grid;
  std::vector<std::string> outputs;
  QuadratureConfig quad{1e-8};
  RootConfig roots{};
  std::string out_path;
};

// Reads the [stack], [grid], [outputs], [quadrature], [roots] and [output]
// sections; throws ConfigError before anything is computed.
ScenarioConfig load_scenario(const std::string& path, const PresetTable& table);
ScenarioConfig parse_scenario(std::istream& in, const PresetTable& table);

// Sweep quantities and their CSV columns.
const std::vector<std::string>& known_outputs();

struct RunOptions {
  int jobs = 0;  // 0: hardware concurrency
  std::optional<double> rel_tol;
  HamakerConvention convention = HamakerConvention::Native;
};

// Rows hold preformatted cells; failed points carry "nan" cells and a line
// in `failures`.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> failures;
};

std::string format_number(double x);  // 17 significant digits
std::string to_csv(const Table& t);

// Scenario parameters; a config file may override any of them.
struct Fig1Params {
  double alpha_a = 0.5, beta_a = 1.0;
  double alpha_b = 2.0, beta_b = 3.0;
  double Lambda = 1.0;
  double k_min = 1e-3, k_max = 10.0;  // in omega_p1 / c
  int k_count = 200;
  double omega_p1 = 1e16;
};

struct Fig2Params {
  double alpha = 5.0, beta = 25.0;
  double omega_p1 = 1e16;
  double x_min = 1e-3, x_max = 1.0;  // L / lambda_p1
  int count = 30;
};

struct Fig3Params {
  double alpha = 5.0, beta = 25.0;
  double omega_p1 = 1e16;
  std::array<std::string, 3> realistic{"silica-2osc", "bromobenzene-2osc", "gold-drude"};
  double x_min = 1e-3, x_max = 4.0;  // L / lambda_p1 of each stack
  int count = 30;
};

struct Fig1Case {
  std::string label;  // "a" or "b"
  PlasmaTriple triple;
  ModeBranch minus, plus;
};
std::vector<Fig1Case> fig1_cases(const Fig1Params& p, const RunOptions& opt);

Fig1Params load_fig1(const std::string& path);
Fig2Params load_fig2(const std::string& path);
Fig3Params load_fig3(const std::string& path);

Table cmd_fig1(const Fig1Params& p, const RunOptions& opt);
Table cmd_fig2(const Fig2Params& p, const RunOptions& opt);
Table cmd_fig3(const Fig3Params& p, const PresetTable& presets, const RunOptions& opt);
Table cmd_sweep(const ScenarioConfig& cfg, const RunOptions& opt);
Table cmd_materials(const PresetTable& presets);

// Whole command line; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace casimir::cli
