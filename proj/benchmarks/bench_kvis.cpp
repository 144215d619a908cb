#include <benchmark/benchmark.h>

#include "kvis/placement.hpp"
#include "kvis/polygen.hpp"
#include "kvis/verifier.hpp"

using namespace kvis;

namespace {

// Random simple polygons stop generating reliably past a few hundred
// vertices; monotone ones cover the larger sizes.
PolygonWithHoles random_polygon(int n) { return generate({Family::kRandomSimple, n, 1, 0}); }
PolygonWithHoles monotone_polygon(int n) { return generate({Family::kMonotone, n, 1, 0}); }

std::vector<std::pair<Point, Point>> interior_pairs(const PolygonWithHoles& poly, int count) {
  SamplePlan plan;
  plan.grid_density = 2;
  plan.near_feature_count = 0;
  plan.random_count = 2 * count;
  plan.seed = 3;
  const std::vector<Point> pts = sample_points(poly, plan);
  std::vector<std::pair<Point, Point>> out;
  for (std::size_t i = 0; i + 1 < pts.size(); i += 2) out.emplace_back(pts[i], pts[i + 1]);
  return out;
}

}  // namespace

static void BM_CrossingCount(benchmark::State& state) {
  const PolygonWithHoles poly = monotone_polygon(static_cast<int>(state.range(0)));
  const VisibilityScene scene(poly);
  const auto pairs = interior_pairs(poly, 256);
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& [p, q] = pairs[i++ % pairs.size()];
    try {
      benchmark::DoNotOptimize(crossing_count(p, q, scene));
    } catch (const Error&) {
    }
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CrossingCount)->RangeMultiplier(4)->Range(16, 256)->Complexity();

static void BM_DecomposeMinimal(benchmark::State& state) {
  const PolygonWithHoles poly = random_polygon(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(decompose(poly, DecompositionMode::kMinimal));
}
BENCHMARK(BM_DecomposeMinimal)->RangeMultiplier(2)->Range(8, 64)->Unit(benchmark::kMillisecond);

static void BM_DecomposeFast(benchmark::State& state) {
  const PolygonWithHoles poly = monotone_polygon(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(decompose(poly, DecompositionMode::kFast));
}
BENCHMARK(BM_DecomposeFast)->RangeMultiplier(4)->Range(16, 256)->Unit(benchmark::kMillisecond);

static void BM_PlaceGuards(benchmark::State& state) {
  const PolygonWithHoles poly = generate({Family::kComb, static_cast<int>(state.range(0)), 1, 0});
  for (auto _ : state) benchmark::DoNotOptimize(place_guards(poly, 4));
}
BENCHMARK(BM_PlaceGuards)->Arg(12)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

static void BM_Coverage(benchmark::State& state) {
  const PolygonWithHoles poly = random_polygon(32);
  const GuardSet guards = place_guards(poly, 2).guards;
  SamplePlan plan;
  plan.random_count = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(coverage(poly, guards, plan));
}
BENCHMARK(BM_Coverage)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
