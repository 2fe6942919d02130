#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "dla/closure.hpp"
#include "dla/constructions.hpp"
#include "dla/numeric.hpp"
#include "dla/pauli.hpp"

namespace {

void BM_MaxCutCycleClosure(benchmark::State& state) {
  const auto spec = dla::qaoa_generators(dla::Graph::cycle(static_cast<std::size_t>(state.range(0))),
                                         dla::QaoaFamily::kMaxCut);
  for (auto _ : state) {
    auto basis = dla::lie_closure<dla::PauliCombination>(spec.pauli());
    benchmark::DoNotOptimize(basis.elements.data());
  }
}
BENCHMARK(BM_MaxCutCycleClosure)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

void BM_SnEquivariantAnalyze(benchmark::State& state) {
  const auto spec = dla::qaoa_generators(dla::Graph::cycle(static_cast<std::size_t>(state.range(0))),
                                         dla::QaoaFamily::kSnEquivariant);
  for (auto _ : state) benchmark::DoNotOptimize(dla::analyze<dla::PauliCombination>(spec.pauli()).dim_g);
}
BENCHMARK(BM_SnEquivariantAnalyze)->DenseRange(3, 4)->Unit(benchmark::kMillisecond);

void BM_PauliCommutator(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> c(-1.0, 1.0);
  auto make = [&] {
    std::vector<dla::PauliCombination::Entry> e;
    for (int k = 0; k < 32; ++k) e.push_back({dla::random_pauli_term(n, rng), c(rng)});
    return dla::PauliCombination::from_entries(n, e);
  };
  const auto a = make(), b = make();
  for (auto _ : state) benchmark::DoNotOptimize(dla::commutator(a, b).size());
}
BENCHMARK(BM_PauliCommutator)->Arg(8)->Arg(64)->Arg(200);

void BM_JacobiEigensolver(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const auto h = dla::random_hermitian(state.range(0), rng);
  for (auto _ : state) benchmark::DoNotOptimize(dla::jacobi_eigensolver(h.matrix()).sweeps);
}
BENCHMARK(BM_JacobiEigensolver)->RangeMultiplier(2)->Range(4, 64);

}  // namespace

BENCHMARK_MAIN();
