#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <thread>

#include "casimir/errors.hpp"
#include "casimir_cli/cli.hpp"

namespace casimir::cli {

namespace {

int emit(const Table& t, const std::string& out_path, std::ostream& out, std::ostream& err) {
  const std::string csv = to_csv(t);
  if (out_path.empty()) {
    out << csv;
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) {
      err << "error: cannot write '" << out_path << "'\n";
      return 2;
    }
    f << csv;
  }
  for (const auto& m : t.failures) err << "failed: " << m << '\n';
  return t.failures.empty() ? 0 : 1;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Casimir forces and coupled surface plasmons in three-layer stacks"};
  app.require_subcommand(1);
  std::string config, out_path, convention = "paper";
  int jobs = 0;
  double rel_tol = 0.0;
  app.add_option("--config", config, "INI file with scenario parameters")->check(CLI::ExistingFile);
  app.add_option("--out", out_path, "CSV output path (default: stdout)");
  app.add_option("--jobs", jobs, "worker threads (default: available parallelism)")->check(CLI::PositiveNumber);
  auto* tol = app.add_option("--rel-tol", rel_tol, "relative quadrature tolerance")->check(CLI::PositiveNumber);
  app.add_option("--convention", convention, "Hamaker prefactor: paper (H/3) or conventional (A/6pi)")
      ->check(CLI::IsMember({"paper", "conventional"}));

  auto* fig1 = app.add_subcommand("fig1", "coupled plasmon branches, single-interface curves, light lines");
  auto* fig2 = app.add_subcommand("fig2", "reduction factors of the plasma triple vs L/lambda_p1");
  auto* fig3 = app.add_subcommand("fig3", "eta_F of the plasma triple and a realistic stack with asymptotes");
  auto* sweep = app.add_subcommand("sweep", "distance sweep from --config");
  auto* materials = app.add_subcommand("materials", "list material presets");
  for (auto* sub : {fig1, fig2, fig3, sweep, materials}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  RunOptions opt;
  opt.jobs = jobs > 0 ? jobs : static_cast<int>(std::thread::hardware_concurrency());
  if (*tol) opt.rel_tol = rel_tol;
  opt.convention = convention == "paper" ? HamakerConvention::Native : HamakerConvention::Conventional;

  try {
    const PresetTable presets = load_presets();
    if (*fig1) return emit(cmd_fig1(load_fig1(config), opt), out_path, out, err);
    if (*fig2) return emit(cmd_fig2(load_fig2(config), opt), out_path, out, err);
    if (*fig3) return emit(cmd_fig3(load_fig3(config), presets, opt), out_path, out, err);
    if (*materials) return emit(cmd_materials(presets), out_path, out, err);
    if (*sweep) {
      if (config.empty()) throw ConfigError("sweep needs --config");
      ScenarioConfig cfg = load_scenario(config, presets);
      if (out_path.empty()) out_path = cfg.out_path;
      return emit(cmd_sweep(cfg, opt), out_path, out, err);
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace casimir::cli
