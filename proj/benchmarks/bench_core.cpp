#include <benchmark/benchmark.h>

#include "curvelab/experiments.hpp"
#include "curvelab/hyperbolic.hpp"
#include "curvelab/intersection.hpp"
#include "curvelab/search.hpp"

using namespace curvelab;

namespace {

const SurfaceSig kTorus = SurfaceSig::make(1, 1);
const SurfaceSig kGenus2 = SurfaceSig::make(2, 0);

void BM_BuildHolonomy(benchmark::State& state) {
  const auto X = FNPoint::make(pants_type(kGenus2, state.range(0) ? "dumbbell" : "theta"), {1.1, 0.7, 2.3},
                               {0.2, -0.4, 0.9});
  for (auto _ : state) benchmark::DoNotOptimize(build_holonomy(X));
}
BENCHMARK(BM_BuildHolonomy)->Arg(0)->Arg(1);

void BM_CurveLength(benchmark::State& state) {
  const auto& h = reference_holonomy(kGenus2);
  const auto pool = enumerate_words(kGenus2, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    for (const auto& w : pool) benchmark::DoNotOptimize(curve_length(h, w));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(pool.size()));
}
BENCHMARK(BM_CurveLength)->Arg(3)->Arg(4);

void BM_EnumerateWords(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_words(kGenus2, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_EnumerateWords)->Arg(4)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_SlopeIntersection(benchmark::State& state) {
  const auto& h = reference_holonomy(kTorus);
  const auto a = word_of_slope(Slope::make(3, 5));
  const auto b = word_of_slope(Slope::make(5, 8));
  for (auto _ : state) benchmark::DoNotOptimize(geodesic_intersection(h, a, b, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_SlopeIntersection)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_OrbitSearchGenus2(benchmark::State& state) {
  const auto m = Multicurve::make({CurveWord::parse(kGenus2, "aC"), CurveWord::parse(kGenus2, "bd")});
  SearchOptions o;
  o.threads = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(orbit_min_intersection(reference_holonomy(kGenus2), pants_type(kGenus2, "dumbbell"), m,
                                                    static_cast<int>(state.range(0)), o));
  }
}
BENCHMARK(BM_OrbitSearchGenus2)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_ThickSample(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(thick_sample(kTorus, 0.5, 20, 1));
}
BENCHMARK(BM_ThickSample)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
