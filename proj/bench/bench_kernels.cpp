// Serial reference vs OpenMP branch of each parallel kernel.
// Arg 0 = Exec::Serial, 1 = Exec::Parallel.

#include <benchmark/benchmark.h>

#include <vector>

#include "vixbns/oracle.hpp"
#include "vixbns/pricing.hpp"
#include "vixbns/sweep.hpp"

using namespace vixbns;

namespace {

ModelParams study() { return ModelParams({Variant::GammaOU, 0.5783, 1.4338, 11.6641, -1.2606, 0.007, 0.0833}); }

MarketState state(double t = 0.5) { return {t, 1124.47, 0.0145}; }

Exec exec_of(const benchmark::State& st) { return st.range(0) == 0 ? Exec::Serial : Exec::Parallel; }

void label(benchmark::State& st) { st.SetLabel(st.range(0) == 0 ? "serial" : "openmp"); }

void BM_FillCfGrid(benchmark::State& st) {
  const ModelParams p = study();
  std::vector<cplx> out(1 << 16);
  for (auto _ : st) {
    fill_cf_grid(p, state(), 1.0, 1.75, 1e-4, -4e4, 1.25, 0.02, out, exec_of(st));
    benchmark::DoNotOptimize(out.data());
  }
  label(st);
  st.SetItemsProcessed(st.iterations() * static_cast<long>(out.size()));
}

void BM_FillPayoffGrid(benchmark::State& st) {
  const VixCoefficients c = vix_coefficients(study());
  std::vector<cplx> out(1 << 16);
  for (auto _ : st) {
    fill_payoff_grid(1.75, 0.18588, c, -4e4, 1.25, out, exec_of(st));
    benchmark::DoNotOptimize(out.data());
  }
  label(st);
  st.SetItemsProcessed(st.iterations() * static_cast<long>(out.size()));
}

void BM_SimulateGammaOu(benchmark::State& st) {
  const ModelParams p = study();
  McSettings mc;
  mc.n_paths = 200'000;
  for (auto _ : st) benchmark::DoNotOptimize(simulate_gamma_ou_terminal(p, 0.5, 1.0, 0.0145, mc, exec_of(st)));
  label(st);
  st.SetItemsProcessed(st.iterations() * mc.n_paths);
}

void BM_SweepStrikes(benchmark::State& st) {
  const ModelParams p = study();
  const auto q = default_settings(Variant::GammaOU);
  const auto strikes = axis_grid(0.12, 0.30, 0.02);
  SweepOptions opts;
  opts.exec = exec_of(st);
  for (auto _ : st) benchmark::DoNotOptimize(sweep_strikes(p, state(), 1.0, strikes, 1.75, q, opts));
  label(st);
}

void BM_SweepTimes(benchmark::State& st) {
  const ModelParams p = study();
  const auto q = default_settings(Variant::GammaOU);
  const auto times = axis_grid(0.0, 0.98, 0.02);
  SweepOptions opts;
  opts.exec = exec_of(st);
  for (auto _ : st) benchmark::DoNotOptimize(sweep_times(p, state(), times, 1.0, 0.18588, 1.75, q, opts));
  label(st);
}

void BM_PriceViaFft(benchmark::State& st) {
  const ModelParams p = study();
  const auto q = default_settings(Variant::GammaOU);
  const std::vector<double> strikes = {0.16, 0.18588, 0.22, 0.26, 0.3};
  for (auto _ : st) benchmark::DoNotOptimize(price_via_fft(p, state(), 1.0, strikes, 1.75, q, exec_of(st)));
  label(st);
}

}  // namespace

BENCHMARK(BM_FillCfGrid)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_FillPayoffGrid)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_SimulateGammaOu)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepStrikes)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepTimes)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PriceViaFft)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
