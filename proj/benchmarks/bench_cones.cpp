#include <benchmark/benchmark.h>

#include "gentkit/cones.hpp"
#include "gentkit/registry.hpp"

using namespace gentkit;
namespace gc = gentkit::cones;

namespace {

gc::LieConePair pair22(int n_random) {
  AlgebraSpec hs;
  hs.kind = AlgebraSpec::Kind::BipartiteLocal;
  hs.dims = {2, 2};
  AlgebraSpec gs;
  gs.kind = AlgebraSpec::Kind::FullMatrix;
  gs.dims = {4};
  auto h = std::make_shared<const AlgebraRep>(build_algebra(hs));
  auto g = std::make_shared<const AlgebraRep>(build_algebra(gs));
  return gc::lie_cone_pair(g, h, {}, n_random, 11);
}

}  // namespace

static void BM_ConeMembership(benchmark::State& state) {
  gc::LieConePair pair = pair22(static_cast<int>(state.range(0)));
  RealVector x = pair.coords(random_density(4, 3, 3).matrix());
  for (auto _ : state) benchmark::DoNotOptimize(gc::contains(pair.d, x));
}
BENCHMARK(BM_ConeMembership)->Arg(16)->Arg(48);

static void BM_ConeSRelative(benchmark::State& state) {
  gc::LieConePair pair = pair22(static_cast<int>(state.range(0)));
  SchurConcaveFn sh = SchurConcaveFn::shannon();
  RealVector x = pair.coords(random_density(4, 3, 4).matrix());
  gc::ConeOptions opts;
  for (auto _ : state)
    benchmark::DoNotOptimize(gc::cone_S_relative(pair.d, pair.c, pair.pi, x, sh, opts));
}
BENCHMARK(BM_ConeSRelative)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
