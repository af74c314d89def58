// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include <vector>

#include "lpbdd/numerics.hpp"
#include "lpbdd/oracles.hpp"
#include "lpbdd/suites.hpp"

namespace {

using namespace lpbdd;

void BM_MonteCarlo(benchmark::State& state, bool parallel) {
  const StBddInstance inst = floor_instance();
  const auto trials = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    MonteCarloResult r = parallel ? monte_carlo_success(inst, trials, Rng(1))
                                  : monte_carlo_success_serial(inst, trials, Rng(1));
    benchmark::DoNotOptimize(r.successes);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK_CAPTURE(BM_MonteCarlo, serial, false)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_MonteCarlo, parallel, true)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_AlphaCurve(benchmark::State& state, bool parallel) {
  std::vector<double> ps;
  for (int k = 0; k <= 178; ++k) ps.push_back(1.1 + 0.05 * k);
  const std::vector<RankRatio> cs = {RankRatio(1.5), RankRatio(2), RankRatio(5), RankRatio::infinite()};
  for (auto _ : state) {
    auto rows = parallel ? alpha_curve(ps, cs) : alpha_curve_serial(ps, cs);
    benchmark::DoNotOptimize(rows.data());
  }
}
BENCHMARK_CAPTURE(BM_AlphaCurve, serial, false)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_AlphaCurve, parallel, true)->Unit(benchmark::kMillisecond);

void BM_MoSweep(benchmark::State& state, bool parallel) {
  const MoSuiteOptions o = default_mo_options();
  for (auto _ : state) {
    MoSweepReport r = parallel ? verify_mo_bound_sweep(o.ps, o.n_max, o.r_max, o.r_step)
                               : verify_mo_bound_sweep_serial(o.ps, o.n_max, o.r_max, o.r_step);
    benchmark::DoNotOptimize(r.max_ratio);
  }
}
BENCHMARK_CAPTURE(BM_MoSweep, serial, false)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_MoSweep, parallel, true)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
