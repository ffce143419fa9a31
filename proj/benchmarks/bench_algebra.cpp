#include <benchmark/benchmark.h>

#include "gentkit/algebra.hpp"
#include "gentkit/registry.hpp"
#include "gentkit/states.hpp"

using namespace gentkit;

namespace {

AlgebraRep local_algebra(int na, int nb) {
  AlgebraSpec s;
  s.kind = AlgebraSpec::Kind::BipartiteLocal;
  s.dims = {na, nb};
  return build_algebra(s);
}

}  // namespace

static void BM_Project(benchmark::State& state) {
  AlgebraRep alg = local_algebra(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)));
  Matrix rho = random_density(alg.hilbert_dim(), alg.hilbert_dim(), 1).matrix();
  for (auto _ : state) benchmark::DoNotOptimize(project(alg, rho));
}
BENCHMARK(BM_Project)->Arg(2)->Arg(3)->Arg(4);

static void BM_HPurity(benchmark::State& state) {
  AlgebraRep alg = local_algebra(2, 2);
  Matrix rho = random_density(4, 4, 2).matrix();
  for (auto _ : state) benchmark::DoNotOptimize(h_purity(alg, rho));
}
BENCHMARK(BM_HPurity);

static void BM_SupportingCartan(benchmark::State& state) {
  AlgebraRep alg = local_algebra(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)));
  Matrix rho = random_pure(alg.hilbert_dim(), 3).projector();
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(supporting_cartan(alg, rho, seed++));
}
BENCHMARK(BM_SupportingCartan)->Arg(2)->Arg(3);

static void BM_FromGenerators(benchmark::State& state) {
  std::vector<Matrix> gens{spin_jx(1.5), spin_jy(1.5)};
  for (auto _ : state) benchmark::DoNotOptimize(from_generators(gens));
}
BENCHMARK(BM_FromGenerators);
