#include "nervelab/realization.hpp"

#include <algorithm>

namespace nervelab {

Simplex<VertexId> carrier(const PolyhedralSpace& space, const BarycentricPoint& p) {
  if (p.level < 0) throw Error(Errc::invalid_point, "negative level");
  return carrier(space.stage(p.level).complex, p);
}

BarycentricPoint refine_point(const PolyhedralSpace& space, const BarycentricPoint& p, int target_level) {
  if (target_level < p.level) throw Error(Errc::cannot_coarsen, "points are only re-expressed at finer levels");
  carrier(space, p);
  BarycentricPoint current = p;
  for (int level = p.level; level < target_level; ++level) {
    // Sort by decreasing coordinate; then
    //   p = sum_j j * (x_(j) - x_(j+1)) * barycenter{v_(1..j)}
    std::vector<std::pair<VertexId, Rational>> sorted;
    for (const auto& [v, x] : current.coords)
      if (x > 0) sorted.emplace_back(v, x);
    std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.second > b.second; });

    BarycentricPoint next;
    next.level = level + 1;
    Simplex<VertexId> prefix;
    for (std::size_t j = 0; j < sorted.size(); ++j) {
      prefix.push_back(sorted[j].first);
      const Rational following = j + 1 < sorted.size() ? sorted[j + 1].second : Rational(0);
      const Rational weight = Rational(static_cast<long long>(j + 1)) * (sorted[j].second - following);
      if (weight != 0) next.coords[simplex_token(make_simplex(prefix))] += weight;
    }
    current = std::move(next);
  }
  return current;
}

void validate_star_set(const PolyhedralSpace& space, const StarSet& s) {
  if (s.core.empty()) throw Error(Errc::invalid_cover, "[nonempty-core] star-set without core vertices");
  const auto& st = space.stage(s.level);
  for (const auto& v : s.core)
    if (!st.complex.has_vertex(v))
      throw Error(Errc::invalid_cover,
                  "[core-in-stage] '" + v + "' is not a vertex at level " + std::to_string(s.level));
}

bool star_contains(const PolyhedralSpace& space, const StarSet& s, const BarycentricPoint& p) {
  if (s.level != p.level) throw Error(Errc::level_mismatch, "star-set and point live at different levels");
  const auto c = carrier(space, p);
  return std::any_of(c.begin(), c.end(), [&](const VertexId& v) { return s.core.count(v) != 0; });
}

StarSet push_star(const PolyhedralSpace& space, const StarSet& s, int target_level) {
  if (target_level < s.level) throw Error(Errc::cannot_coarsen, "star-sets can only be pushed to finer levels");
  StarSet current = s;
  for (int level = s.level; level < target_level; ++level) {
    // st(v) at level m is the union of st(b_tau) at level m+1 over tau ∋ v.
    StarSet next;
    next.level = level + 1;
    for (const auto& tau : space.stage(level).complex.simplices()) {
      const bool meets = std::any_of(tau.begin(), tau.end(), [&](const VertexId& v) { return current.core.count(v) != 0; });
      if (meets) next.core.insert(simplex_token(tau));
    }
    current = std::move(next);
  }
  return current;
}

std::vector<char> core_mask_at(const PolyhedralSpace& space, const StarSet& s, int level) {
  const StarSet pushed = push_star(space, s, level);
  const auto& idx = *space.stage(level).index;
  std::vector<char> mask(idx.names.size(), 0);
  for (const auto& v : pushed.core) {
    const int i = idx.vertex(v);
    if (i < 0) throw Error(Errc::invalid_cover, "[core-in-stage] '" + v + "' is not a stage vertex");
    mask[static_cast<std::size_t>(i)] = 1;
  }
  return mask;
}

std::vector<char> star_simplex_mask(const StageIndex& index, const std::vector<char>& core_mask) {
  std::vector<char> out(index.simplices.size(), 0);
  for (std::size_t s = 0; s < index.simplices.size(); ++s)
    for (int v : index.simplices[s])
      if (core_mask[static_cast<std::size_t>(v)]) {
        out[s] = 1;
        break;
      }
  return out;
}

std::string_view to_string(StarRelation r) {
  switch (r) {
    case StarRelation::disjoint: return "disjoint";
    case StarRelation::s1_subset_s2: return "s1_subset_s2";
    case StarRelation::s2_subset_s1: return "s2_subset_s1";
    case StarRelation::overlapping: return "overlapping";
    case StarRelation::equal: return "equal";
  }
  return "unknown";
}

StarRelation star_relation(const PolyhedralSpace& space, const StarSet& s1, const StarSet& s2) {
  const int level = std::max(s1.level, s2.level);
  const auto& idx = *space.stage(level).index;
  const auto m1 = star_simplex_mask(idx, core_mask_at(space, s1, level));
  const auto m2 = star_simplex_mask(idx, core_mask_at(space, s2, level));
  bool common = false;
  bool only1 = false;
  bool only2 = false;
  for (std::size_t i = 0; i < m1.size(); ++i) {
    common |= m1[i] && m2[i];
    only1 |= m1[i] && !m2[i];
    only2 |= m2[i] && !m1[i];
  }
  if (!common) return StarRelation::disjoint;
  if (!only1 && !only2) return StarRelation::equal;
  if (!only1) return StarRelation::s1_subset_s2;
  if (!only2) return StarRelation::s2_subset_s1;
  return StarRelation::overlapping;
}

}  // namespace nervelab
