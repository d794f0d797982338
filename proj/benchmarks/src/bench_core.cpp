#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "casimir/constants.hpp"
#include "casimir/dielectric.hpp"
#include "casimir/hamaker.hpp"
#include "casimir/lifshitz.hpp"
#include "casimir/plasmon_energy.hpp"
#include "casimir/surface_modes.hpp"

using namespace casimir;

namespace {

TriLayer realistic(double L) {
  return TriLayer{presets::silica(), presets::bromobenzene(), presets::gold_drude(), L};
}

TriLayer plasma_triple(double Lambda) {
  const double wp1 = 1e16;
  return TriLayer{Plasma{wp1}, Plasma{5.0 * wp1}, Plasma{25.0 * wp1}, Lambda * constants::c / wp1};
}

}  // namespace

static void BM_EpsImag(benchmark::State& st) {
  const DielectricModel m = presets::silica();
  double xi = 1e15;
  for (auto _ : st) {
    benchmark::DoNotOptimize(eps_imag(m, xi));
    xi *= 1.0000001;
  }
}
BENCHMARK(BM_EpsImag);

// rel_tol passed as 10^-arg
static void BM_LifshitzRealistic(benchmark::State& st) {
  const QuadratureConfig q{std::pow(10.0, -double(st.range(0)))};
  for (auto _ : st) benchmark::DoNotOptimize(lifshitz_pressure(realistic(150e-9), q));
}
BENCHMARK(BM_LifshitzRealistic)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMicrosecond);

static void BM_LifshitzPlasma(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(lifshitz_force(plasma_triple(1.0), QuadratureConfig{1e-8}));
}
BENCHMARK(BM_LifshitzPlasma)->Unit(benchmark::kMicrosecond);

static void BM_Hamaker(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(hamaker_constant(realistic(1e-9)));
}
BENCHMARK(BM_Hamaker)->Unit(benchmark::kMicrosecond);

static void BM_HamakerConductors(benchmark::State& st) {
  const TriLayer s{presets::gold_drude(), Vacuum{}, presets::gold_drude(), 1e-9};
  for (auto _ : st) benchmark::DoNotOptimize(hamaker_constant(s));
}
BENCHMARK(BM_HamakerConductors)->Unit(benchmark::kMillisecond);

static void BM_YIntegral(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(y_integral(1.1, 1.21));
}
BENCHMARK(BM_YIntegral)->Unit(benchmark::kMicrosecond);

static void BM_ModeRoots(benchmark::State& st) {
  const CoupledModeSolver s(PlasmaTriple::from_ratios(2.0, 3.0, 1.0));
  for (auto _ : st) benchmark::DoNotOptimize(s.roots(3.0));
}
BENCHMARK(BM_ModeRoots)->Unit(benchmark::kMicrosecond);

static void BM_Branches(benchmark::State& st) {
  const auto p = PlasmaTriple::from_ratios(0.5, 1.0, 1.0);
  std::vector<double> k(st.range(0));
  for (std::size_t i = 0; i < k.size(); ++i)
    k[i] = 1e-3 * std::pow(1e4, double(i) / (k.size() - 1)) * p.omega_p1 / constants::c;
  for (auto _ : st) benchmark::DoNotOptimize(coupled_branches(p, k));
}
BENCHMARK(BM_Branches)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

static void BM_PlasmonEnergy(benchmark::State& st) {
  const auto p = PlasmaTriple::from_ratios(5.0, 25.0, 0.3);
  for (auto _ : st) benchmark::DoNotOptimize(plasmon_energy(p));
}
BENCHMARK(BM_PlasmonEnergy)->Unit(benchmark::kMillisecond);

static void BM_EnergyBreakdown(benchmark::State& st) {
  const auto p = PlasmaTriple::from_ratios(5.0, 25.0, 0.3);
  for (auto _ : st) benchmark::DoNotOptimize(energy_breakdown(p));
}
BENCHMARK(BM_EnergyBreakdown)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
