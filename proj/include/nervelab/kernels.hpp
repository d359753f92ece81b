#pragma once

// Data-parallel inner loops. Each kernel has an OpenMP version and a
// `*_serial` reference that the tests hold it to.

#include <cstdint>
#include <vector>

#include "nervelab/subdivision.hpp"

namespace nervelab::kernels {

/// meets[s] = sorted indices of the elements whose core meets simplex s.
using MembershipTable = std::vector<std::vector<int>>;

MembershipTable membership(const StageIndex& index, const std::vector<std::vector<char>>& core_masks);
MembershipTable membership_serial(const StageIndex& index, const std::vector<std::vector<char>>& core_masks);

/// First simplex (by index) containing a vertex whose image element does not
/// meet it; -1 if there is none. images[v] < 0 counts as a violation.
int first_selection_violation(const StageIndex& index, const MembershipTable& meets, const std::vector<int>& images);
int first_selection_violation_serial(const StageIndex& index, const MembershipTable& meets,
                                     const std::vector<int>& images);

/// Colouring form of the C-refinement search. Vertices are branched in
/// index order, families in increasing order. Every monochromatic connected
/// component must keep a nonzero intersection of its vertices' allowed masks.
struct ColoringProblem {
  int families = 0;
  std::vector<std::vector<int>> neighbors;
  std::vector<std::vector<std::uint64_t>> allowed;  // [vertex][family]
};

struct SearchStats {
  std::uint64_t attempts = 0;  // (vertex, family) trials
  std::uint64_t accepted = 0;
  std::uint64_t pruned = 0;
  std::uint64_t leaves = 0;    // complete assignments reached

  friend bool operator==(const SearchStats&, const SearchStats&) = default;
};

struct SearchOutcome {
  bool found = false;
  std::vector<int> family_of_vertex;
  /// Exact and reproducible when !found; when found, the parallel search
  /// may have explored extra branches.
  SearchStats stats;
};

SearchOutcome search_serial(const ColoringProblem& problem);
SearchOutcome search_parallel(const ColoringProblem& problem);

}  // namespace nervelab::kernels
