#include <benchmark/benchmark.h>

#include "rhocarroll/builtins.hpp"
#include "rhocarroll/parallel.hpp"

namespace {

using namespace rhoc;

// x^a y^b summed over a box; dense enough for the product to matter.
Element box(const PresentationPtr& alg, int n) {
  Element out(alg);
  for (int a = -n; a <= n; ++a) {
    for (int b = -n; b <= n; ++b) {
      out += Element::generator(alg, 0, a) * Element::generator(alg, 1, b);
    }
  }
  return out;
}

void BM_MultiplySerial(benchmark::State& state) {
  const auto e = build_quantum_plane();
  const Element f = box(e.algebra, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(f * f);
}

void BM_MultiplyParallel(benchmark::State& state) {
  const auto e = build_quantum_plane();
  const Element f = box(e.algebra, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(multiply_parallel(f, f));
}

void run_pair_checks(benchmark::State& state, Execution mode) {
  const auto e = build_nc_torus();
  const Execution saved = default_execution();
  set_default_execution(mode);
  for (auto _ : state) {
    auto r = verify_pair(e.pair, PairCheckOptions{static_cast<std::size_t>(state.range(0)), 1});
    benchmark::DoNotOptimize(r);
  }
  set_default_execution(saved);
}

void BM_VerifyPairSerial(benchmark::State& state) { run_pair_checks(state, Execution::Serial); }
void BM_VerifyPairParallel(benchmark::State& state) { run_pair_checks(state, Execution::Parallel); }

}  // namespace

BENCHMARK(BM_MultiplySerial)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MultiplyParallel)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VerifyPairSerial)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VerifyPairParallel)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
