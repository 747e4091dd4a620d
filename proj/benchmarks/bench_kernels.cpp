#include <benchmark/benchmark.h>

#include <random>

#include "nsas/fft.hpp"
#include "nsas/initial_data.hpp"
#include "nsas/matrix_exp.hpp"
#include "nsas/nonlinearity.hpp"
#include "nsas/profile.hpp"
#include "nsas/semigroup.hpp"
#include "nsas/spectral.hpp"
#include "nsas/solver.hpp"
#include "nsas/symbol.hpp"

namespace {

using namespace nsas;

const FluidParams kParams = FluidParams::make(1.0, 1.0, PressureLaw::quadratic());

Grid grid_for(const benchmark::State& state) {
  const int n = int(state.range(0));
  return Grid(DomainSpec::make(1, {8, n, n}, 100.0 * std::numbers::pi));
}

StateField initial(const Grid& g) {
  return make_initial_data(g.spec(), kParams, {1, 1e-2, 2, 2.5});
}

void BM_ForwardTransform(benchmark::State& state) {
  const Grid g = grid_for(state);
  const StateField u = initial(g);
  ComplexArray out(g.modes());
  for (auto _ : state) {
    forward_transform(g, u.u[0], out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * std::int64_t(g.points()));
}
BENCHMARK(BM_ForwardTransform)->Arg(64)->Arg(128)->Arg(256);

void BM_InverseTransform(benchmark::State& state) {
  const Grid g = grid_for(state);
  const ComplexArray s = forward_transform(g, initial(g).u[0]);
  RealArray out(g.points());
  for (auto _ : state) {
    inverse_transform(g, s, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * std::int64_t(g.points()));
}
BENCHMARK(BM_InverseTransform)->Arg(64)->Arg(128)->Arg(256);

void BM_Propagator(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  std::vector<std::array<double, 3>> qs(256);
  for (auto& q : qs) q = {u(rng), u(rng), u(rng)};
  const LinearCoefficients c = kParams.linear();
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(propagator(qs[i++ % qs.size()], c, 0.05));
  }
}
BENCHMARK(BM_Propagator);

void BM_PhiFunctions(benchmark::State& state) {
  const Matrix4c a = -0.05 * symbol_entries({0.3, 1.1, -2.0}, kParams.linear());
  for (auto _ : state) benchmark::DoNotOptimize(phi_functions(a));
}
BENCHMARK(BM_PhiFunctions);

void BM_NonlinearSource(benchmark::State& state) {
  const Grid g = grid_for(state);
  const ComponentSpectra s = initial(g).spectra();
  for (auto _ : state) benchmark::DoNotOptimize(nonlinear_source(g, kParams, s));
}
BENCHMARK(BM_NonlinearSource)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_SolverStep(benchmark::State& state) {
  const Grid g = grid_for(state);
  ComponentSpectra s = initial(g).spectra();
  EtdIntegrator integ(g, kParams.linear(), 0.05, TimeScheme::etdrk2, true);
  const SourceFn src = navier_stokes_source(g, kParams, true);
  for (auto _ : state) integ.advance(s, src);
}
BENCHMARK(BM_SolverStep)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_ProfileStep(benchmark::State& state) {
  const Grid g = grid_for(state);
  const StateField u0 = initial(g);
  StateField eta0 = StateField::zeros(g.reduced(), kParams);
  for (int c = 0; c < kComponents; ++c) eta0.u[c] = torus_average(g, u0.u[c]);
  SolverConfig cfg;
  cfg.t_end = 1e9;
  ProfileSolver solver(eta0, cfg);
  for (auto _ : state) solver.advance();
}
BENCHMARK(BM_ProfileStep)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
