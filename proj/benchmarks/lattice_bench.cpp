#include <benchmark/benchmark.h>

#include "hkcone/lattice.hpp"

using namespace hkcone;

namespace {

IntMatrix hyperbolic_gram(long n) {
  // U plus (n - 2) copies of <-2k>, a rank-n even hyperbolic lattice.
  IntMatrix g(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  g(0, 1) = 1;
  g(1, 0) = 1;
  for (long i = 2; i < n; ++i) g(static_cast<std::size_t>(i), static_cast<std::size_t>(i)) = -2 * i;
  return g;
}

void BM_DiscriminantGroup(benchmark::State& state) {
  IntegralLattice L(hyperbolic_gram(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(discriminant_group(L));
}
BENCHMARK(BM_DiscriminantGroup)->Arg(3)->Arg(6)->Arg(12);

void BM_Diagonalize(benchmark::State& state) {
  IntegralLattice L(hyperbolic_gram(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(diagonalize(L));
}
BENCHMARK(BM_Diagonalize)->Arg(3)->Arg(6)->Arg(12);

}  // namespace
