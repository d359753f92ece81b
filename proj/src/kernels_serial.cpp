#include "nervelab/kernels.hpp"

#include <algorithm>

#include "search_state.hpp"

namespace nervelab::kernels {

MembershipTable membership_serial(const StageIndex& index, const std::vector<std::vector<char>>& core_masks) {
  MembershipTable meets(index.simplices.size());
  for (std::size_t s = 0; s < index.simplices.size(); ++s) {
    for (std::size_t e = 0; e < core_masks.size(); ++e) {
      const auto& mask = core_masks[e];
      for (int v : index.simplices[s]) {
        if (mask[static_cast<std::size_t>(v)]) {
          meets[s].push_back(static_cast<int>(e));
          break;
        }
      }
    }
  }
  return meets;
}

int first_selection_violation_serial(const StageIndex& index, const MembershipTable& meets,
                                     const std::vector<int>& images) {
  for (std::size_t s = 0; s < index.simplices.size(); ++s) {
    for (int v : index.simplices[s]) {
      const int e = images[static_cast<std::size_t>(v)];
      if (e < 0 || !std::binary_search(meets[s].begin(), meets[s].end(), e)) return static_cast<int>(s);
    }
  }
  return -1;
}

namespace {

bool dfs(detail::SearchState& state, int depth, SearchStats& stats) {
  const int n = state.vertex_count();
  for (int k = 0; k < state.families(); ++k) {
    ++stats.attempts;
    if (!state.assign(depth, k)) {
      ++stats.pruned;
      continue;
    }
    ++stats.accepted;
    if (depth + 1 == n) {
      ++stats.leaves;
      return true;  // keep the assignment in place for the caller
    }
    if (dfs(state, depth + 1, stats)) return true;
    state.undo();
  }
  return false;
}

}  // namespace

SearchOutcome search_serial(const ColoringProblem& problem) {
  SearchOutcome out;
  if (problem.allowed.empty()) {
    out.found = true;
    return out;
  }
  detail::SearchState state(problem);
  out.found = dfs(state, 0, out.stats);
  if (out.found) out.family_of_vertex = state.families_of_vertices();
  return out;
}

}  // namespace nervelab::kernels
