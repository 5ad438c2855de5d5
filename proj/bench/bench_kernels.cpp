#include <benchmark/benchmark.h>

#include "horolab/dirichlet/dirichlet.hpp"
#include "horolab/latticelab/sampling.hpp"

using namespace horolab;

namespace {

latticelab::TranslateJob translate_job(int samples) {
  return {curvejet::CurveSpec::moment(1),
          flowlab::FlowSchedule::equal(1),
          latticelab::catalog_basis("hex", 2),
          latticelab::Sampler::parse("uniform:0,1"),
          latticelab::Observable{},
          8.0,
          samples,
          42};
}

dirichlet::ScanSpec scan_spec(int grid) {
  dirichlet::ScanSpec spec;
  spec.curve = curvejet::CurveSpec::moment(2);
  spec.mu = make_rational(3, 10);
  spec.grid = grid;
  for (int k = 1; k <= 6; ++k) spec.prefix.push_back({1LL << k, 1LL << k});
  return spec;
}

void BM_TranslateSerial(benchmark::State& state) {
  const auto job = translate_job(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(latticelab::translate_sample(job));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_TranslateParallel(benchmark::State& state) {
  const auto job = translate_job(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(latticelab::translate_sample_parallel(job));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ScanSerial(benchmark::State& state) {
  const auto spec = scan_spec(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(dirichlet::curve_scan(spec));
}

void BM_ScanParallel(benchmark::State& state) {
  const auto spec = scan_spec(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(dirichlet::curve_scan_parallel(spec));
}

}  // namespace

BENCHMARK(BM_TranslateSerial)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TranslateParallel)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScanSerial)->Arg(50)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScanParallel)->Arg(50)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
