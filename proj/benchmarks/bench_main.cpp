#include <benchmark/benchmark.h>

#include "ffhyper/curves.hpp"
#include "ffhyper/hypergeo.hpp"
#include "ffhyper/identities.hpp"

using namespace ffhyper;

namespace {

std::uint32_t prime_at_least(std::int64_t n) {
  while (!is_prime(n) || n == 2) ++n;
  return static_cast<std::uint32_t>(n);
}

void BM_HyperAllX(benchmark::State& state) {
  const auto t = SumTables::make(prime_at_least(state.range(0)));
  const auto p = HyperParams::phi_eps(t->group(), 3);
  hyper_all_x(p, *t);  // warm the binomial tables
  for (auto _ : state) benchmark::DoNotOptimize(hyper_all_x(p, *t));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_HyperAllX)->RangeMultiplier(2)->Range(64, 1024)->Complexity(benchmark::oNSquared);

void BM_JacobiTableCold(benchmark::State& state) {
  const auto q = prime_at_least(state.range(0));
  for (auto _ : state) {
    const auto t = SumTables::make(q);
    const auto m = static_cast<std::int64_t>(t->group().size());
    CValue acc{};
    for (std::int64_t a = 0; a < m; a += 4) {
      for (std::int64_t b = 0; b < m; ++b) acc += t->jacobi_at(a, b);
    }
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_JacobiTableCold)->Arg(61)->Arg(127)->Arg(251);

void BM_HyperExactPhi(benchmark::State& state) {
  const auto f = PrimeField::make(prime_at_least(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(hyper_exact_phi(2, 3, f));
}
BENCHMARK(BM_HyperExactPhi)->Arg(31)->Arg(101)->Arg(211);

void BM_AppellF4(benchmark::State& state) {
  const auto t = SumTables::make(prime_at_least(state.range(0)));
  const auto& g = t->group();
  t->gauss_table();
  for (auto _ : state) {
    benchmark::DoNotOptimize(appell_f4(g.quadratic(), g.quadratic(), g.trivial(), g.trivial(), 2, 3, *t));
  }
}
BENCHMARK(BM_AppellF4)->Arg(13)->Arg(31)->Arg(61);

void BM_LegendreTraces(benchmark::State& state) {
  const auto f = PrimeField::make(prime_at_least(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(legendre_traces(f));
}
BENCHMARK(BM_LegendreTraces)->Arg(97)->Arg(293)->Arg(1009);

void BM_EstimateRowF65(benchmark::State& state) {
  const auto q = prime_at_least(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(estimate_row(q, EstimateKind::f65));
}
BENCHMARK(BM_EstimateRowF65)->Arg(97)->Arg(293);

}  // namespace
BENCHMARK_MAIN();
