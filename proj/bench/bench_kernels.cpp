// Serial reference vs OpenMP kernels on the triangle star cover refined to
// increasing subdivision levels.

#include <benchmark/benchmark.h>

#include "nervelab/dimension.hpp"
#include "nervelab/fixtures.hpp"
#include "nervelab/kernels.hpp"

using namespace nervelab;

namespace {

const CoverSequence& refined(int level) {
  static const auto base = fixtures::star_cover(fixtures::triangle(), 3);
  static std::map<int, CoverSequence> cache;
  auto it = cache.find(level);
  if (it == cache.end()) it = cache.emplace(level, base.refined_to(level)).first;
  return it->second;
}

std::vector<std::vector<char>> masks(const CoverSequence& cs) {
  std::vector<std::vector<char>> out;
  for (int i = 0; i < cs.element_count(); ++i) out.push_back(cs.core_mask(i));
  return out;
}

template <bool Parallel>
void BM_membership(benchmark::State& state) {
  const auto& cs = refined(static_cast<int>(state.range(0)));
  const auto m = masks(cs);
  for (auto _ : state) {
    auto t = Parallel ? kernels::membership(*cs.working_stage().index, m)
                      : kernels::membership_serial(*cs.working_stage().index, m);
    benchmark::DoNotOptimize(t);
  }
  state.counters["simplices"] = static_cast<double>(cs.working_stage().index->simplices.size());
}

template <bool Parallel>
void BM_selection_sweep(benchmark::State& state) {
  const auto& cs = refined(static_cast<int>(state.range(0)));
  const auto f = build_canonical(cs, Kappa::finite(3), TargetKind::nerve);
  const auto& index = *cs.working_stage().index;
  std::vector<int> images;
  for (const auto& v : index.names) images.push_back(cs.flat_index(f.map.vertex_images.at(v)));
  for (auto _ : state) {
    const int bad = Parallel ? kernels::first_selection_violation(index, cs.membership(), images)
                             : kernels::first_selection_violation_serial(index, cs.membership(), images);
    benchmark::DoNotOptimize(bad);
  }
}

template <bool Parallel>
void BM_search_exhaustive(benchmark::State& state) {
  const auto instance = search_instance(fixtures::star_cover(fixtures::triangle(), 3), 2, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto out = Parallel ? kernels::search_parallel(instance.problem) : kernels::search_serial(instance.problem);
    benchmark::DoNotOptimize(out);
  }
}

}  // namespace

BENCHMARK_TEMPLATE(BM_membership, false)->DenseRange(1, 4);
BENCHMARK_TEMPLATE(BM_membership, true)->DenseRange(1, 4);
BENCHMARK_TEMPLATE(BM_selection_sweep, false)->DenseRange(1, 4);
BENCHMARK_TEMPLATE(BM_selection_sweep, true)->DenseRange(1, 4);
BENCHMARK_TEMPLATE(BM_search_exhaustive, false)->DenseRange(1, 2)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_search_exhaustive, true)->DenseRange(1, 2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
