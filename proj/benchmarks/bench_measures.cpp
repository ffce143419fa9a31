#include <benchmark/benchmark.h>

#include "gentkit/measures.hpp"
#include "gentkit/registry.hpp"

using namespace gentkit;

namespace {

AlgebraRep local22() {
  AlgebraSpec s;
  s.kind = AlgebraSpec::Kind::BipartiteLocal;
  s.dims = {2, 2};
  return build_algebra(s);
}

AlgebraRep full4() {
  AlgebraSpec s;
  s.kind = AlgebraSpec::Kind::FullMatrix;
  s.dims = {4};
  return build_algebra(s);
}

}  // namespace

static void BM_SPure(benchmark::State& state) {
  AlgebraRep h = local22();
  SchurConcaveFn sh = SchurConcaveFn::shannon();
  PureState psi = random_pure(4, 5);
  for (auto _ : state) benchmark::DoNotOptimize(s_pure(h, psi, sh));
}
BENCHMARK(BM_SPure);

static void BM_SCartan(benchmark::State& state) {
  AlgebraRep h = local22();
  SchurConcaveFn sh = SchurConcaveFn::shannon();
  PureState psi = random_pure(4, 6);
  for (auto _ : state) benchmark::DoNotOptimize(s_cartan(h, psi, sh, 1, 0));
}
BENCHMARK(BM_SCartan);

static void BM_RoofTwoQubit(benchmark::State& state) {
  AlgebraRep h = local22();
  AlgebraRep g = full4();
  SchurConcaveFn sh = SchurConcaveFn::shannon();
  RoofOptions opts;
  opts.restarts = static_cast<int>(state.range(0));
  DensityMatrix rho = random_density(4, 4, 7);
  for (auto _ : state) benchmark::DoNotOptimize(s_roof(g, h, rho, sh, opts));
}
BENCHMARK(BM_RoofTwoQubit)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);
