#include <benchmark/benchmark.h>

#include "cpo/bloch.hpp"
#include "cpo/deflection.hpp"
#include "cpo/medium.hpp"
#include "cpo/propagation.hpp"
#include "cpo/spectrum.hpp"

namespace {

void BM_FloquetSolve(benchmark::State& state) {
  const cpo::AtomParams atom;
  double delta = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cpo::floquet_steady_solve(atom, 0.3, 1e-3, delta));
    delta += 1e-6;
  }
}
BENCHMARK(BM_FloquetSolve);

void BM_ProbeSpectrum(benchmark::State& state) {
  cpo::AtomParams atom;
  atom.delta_c = 0.0;
  const auto grid = cpo::linspace(-2.0, 2.0, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(cpo::probe_spectrum(atom, 0.2, grid));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ProbeSpectrum)->Arg(401)->Arg(1601);

// 100 split steps of the cubic control equation.
void BM_SplitStepControl(benchmark::State& state) {
  const auto m = cpo::derive_coefficients({}, {}, {});
  const auto grid = cpo::TransverseGrid::centered(static_cast<std::size_t>(state.range(0)), 16.0 * m.l_c);
  const auto u0 = cpo::sample_soliton(grid, m);
  cpo::PropagationOptions opts;
  opts.edge_tolerance = 2e-3;
  for (auto _ : state) benchmark::DoNotOptimize(cpo::propagate_control(u0, m, 1.0, 0.01, cpo::ControlModel::cubic, opts));
  state.SetItemsProcessed(state.iterations() * 100);
}
BENCHMARK(BM_SplitStepControl)->Arg(256)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);

void BM_DeflectionCell(benchmark::State& state) {
  const cpo::MediumTemplate medium{};
  const double l_c = medium.at(-10.0).l_c;
  for (auto _ : state) benchmark::DoNotOptimize(cpo::deflection_cell(l_c, -10.0, medium, {}));
}
BENCHMARK(BM_DeflectionCell)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
