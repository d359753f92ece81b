#include <algorithm>
#include <atomic>
#include <climits>

#include <omp.h>

#include "nervelab/kernels.hpp"
#include "search_state.hpp"

namespace nervelab::kernels {

MembershipTable membership(const StageIndex& index, const std::vector<std::vector<char>>& core_masks) {
  const auto simplex_count = static_cast<std::int64_t>(index.simplices.size());
  MembershipTable meets(index.simplices.size());

#pragma omp parallel for schedule(static)
  for (std::int64_t s = 0; s < simplex_count; ++s) {
    const auto& simplex = index.simplices[static_cast<std::size_t>(s)];
    auto& row = meets[static_cast<std::size_t>(s)];
    for (std::size_t e = 0; e < core_masks.size(); ++e) {
      const auto& mask = core_masks[e];
      if (std::any_of(simplex.begin(), simplex.end(), [&](int v) { return mask[static_cast<std::size_t>(v)] != 0; }))
        row.push_back(static_cast<int>(e));
    }
  }
  return meets;
}

int first_selection_violation(const StageIndex& index, const MembershipTable& meets, const std::vector<int>& images) {
  const auto simplex_count = static_cast<std::int64_t>(index.simplices.size());
  int first = INT_MAX;

#pragma omp parallel for schedule(static) reduction(min : first)
  for (std::int64_t s = 0; s < simplex_count; ++s) {
    const auto& row = meets[static_cast<std::size_t>(s)];
    for (int v : index.simplices[static_cast<std::size_t>(s)]) {
      const int e = images[static_cast<std::size_t>(v)];
      if (e < 0 || !std::binary_search(row.begin(), row.end(), e)) {
        first = std::min(first, static_cast<int>(s));
        break;
      }
    }
  }
  return first == INT_MAX ? -1 : first;
}

namespace {

using detail::SearchState;

void replay(SearchState& state, const std::vector<int>& prefix) {
  for (std::size_t v = 0; v < prefix.size(); ++v) state.assign(static_cast<int>(v), prefix[v]);
}

bool dfs(SearchState& state, int depth, SearchStats& stats, const std::atomic<std::int64_t>& best,
         std::int64_t my_index) {
  const int n = state.vertex_count();
  for (int k = 0; k < state.families(); ++k) {
    // A lexicographically earlier branch already produced a certificate.
    if (best.load(std::memory_order_relaxed) < my_index) return false;
    ++stats.attempts;
    if (!state.assign(depth, k)) {
      ++stats.pruned;
      continue;
    }
    ++stats.accepted;
    if (depth + 1 == n) {
      ++stats.leaves;
      return true;
    }
    if (dfs(state, depth + 1, stats, best, my_index)) return true;
    state.undo();
  }
  return false;
}

}  // namespace

SearchOutcome search_parallel(const ColoringProblem& problem) {
  SearchOutcome out;
  const int n = static_cast<int>(problem.allowed.size());
  if (n == 0) {
    out.found = true;
    return out;
  }

  // Breadth-first prefix expansion in lexicographic order, stopping one
  // vertex short of a complete assignment.
  const std::size_t target = static_cast<std::size_t>(std::max(64, 8 * omp_get_max_threads()));
  std::vector<std::vector<int>> prefixes{{}};
  int depth = 0;
  while (depth < n - 1 && !prefixes.empty() && prefixes.size() < target) {
    std::vector<std::vector<int>> next;
    for (const auto& prefix : prefixes) {
      SearchState state(problem);
      replay(state, prefix);
      for (int k = 0; k < problem.families; ++k) {
        ++out.stats.attempts;
        if (!state.assign(depth, k)) {
          ++out.stats.pruned;
          continue;
        }
        ++out.stats.accepted;
        auto extended = prefix;
        extended.push_back(k);
        next.push_back(std::move(extended));
        state.undo();
      }
    }
    prefixes = std::move(next);
    ++depth;
  }

  const auto count = static_cast<std::int64_t>(prefixes.size());
  std::atomic<std::int64_t> best{count};
  std::vector<SearchStats> stats(prefixes.size());
  std::vector<std::vector<int>> solutions(prefixes.size());

#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < count; ++i) {
    if (best.load(std::memory_order_relaxed) < i) continue;
    SearchState state(problem);
    replay(state, prefixes[static_cast<std::size_t>(i)]);
    if (dfs(state, depth, stats[static_cast<std::size_t>(i)], best, i)) {
      solutions[static_cast<std::size_t>(i)] = state.families_of_vertices();
      std::int64_t current = best.load();
      while (i < current && !best.compare_exchange_weak(current, i)) {
      }
    }
  }

  for (const auto& s : stats) {
    out.stats.attempts += s.attempts;
    out.stats.accepted += s.accepted;
    out.stats.pruned += s.pruned;
    out.stats.leaves += s.leaves;
  }
  const std::int64_t winner = best.load();
  if (winner < count) {
    out.found = true;
    out.family_of_vertex = solutions[static_cast<std::size_t>(winner)];
  }
  return out;
}

}  // namespace nervelab::kernels
