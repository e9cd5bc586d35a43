#include <benchmark/benchmark.h>

#include "leadlift/exponents.hpp"
#include "leadlift/oracle.hpp"
#include "leadlift/transference.hpp"

using namespace leadlift;

static void BM_ComputeConstants(benchmark::State& state) {
  const auto nodes = NodeSet::standard(static_cast<unsigned>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(compute_constants(nodes));
}
BENCHMARK(BM_ComputeConstants)->DenseRange(1, 6);

static void BM_Lift(benchmark::State& state) {
  const unsigned k = static_cast<unsigned>(state.range(0));
  const Transference t(NodeSet::standard(k));
  std::vector<Integer> c;
  for (unsigned j = 0; j <= k; ++j) c.emplace_back(static_cast<long>(999983 - 7919 * j * j));
  const IntegerPolynomial p(c, k);
  const auto xi = RealSpec::parse("rat:355/113");
  for (auto _ : state) benchmark::DoNotOptimize(t.lift(p, xi));
}
BENCHMARK(BM_Lift)->DenseRange(1, 5);

static void BM_EncloseEuler(benchmark::State& state) {
  const auto e = RealSpec::euler();
  const unsigned bits = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enclose(e, bits));
}
BENCHMARK(BM_EncloseEuler)->RangeMultiplier(4)->Range(64, 4096);

static void BM_OmegaGolden(benchmark::State& state) {
  const auto golden = RealSpec::parse("cf:1;1;per=1");
  const SearchWindow window(10, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(omega_estimate(golden, 1, window, false));
}
BENCHMARK(BM_OmegaGolden)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_LambdaSqrt2(benchmark::State& state) {
  const auto sqrt2 = RealSpec::parse("alg:-2,0,1:1,2");
  const SearchWindow window(2, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(lambda_estimate(sqrt2, 2, window));
}
BENCHMARK(BM_LambdaSqrt2)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
