#pragma once

// Exact points of |K|, carriers, open-star sets and affine realization of
// simplicial maps. All arithmetic is exact rational.

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "nervelab/complex.hpp"
#include "nervelab/subdivision.hpp"

namespace nervelab {

using Rational = boost::multiprecision::cpp_rational;

/// Barycentric coordinates over the vertices of a stage complex.
template <class V>
struct Point {
  int level = 0;
  std::map<V, Rational> coords;

  friend bool operator==(const Point&, const Point&) = default;
};

using BarycentricPoint = Point<VertexId>;

/// Support of a point after checking coordinates are nonnegative and sum to 1.
template <class V>
Simplex<V> support(const Point<V>& p) {
  Rational total = 0;
  Simplex<V> supp;
  for (const auto& [v, x] : p.coords) {
    if (x < 0) throw Error(Errc::invalid_point, "[nonnegative] negative barycentric coordinate");
    total += x;
    if (x > 0) supp.push_back(v);
  }
  if (total != 1) throw Error(Errc::invalid_point, "[sum-to-one] coordinates sum to " + total.str());
  return supp;  // std::map keys are ordered, so supp is already a simplex
}

/// The unique simplex whose relative interior contains p.
template <class V>
Simplex<V> carrier(const Complex<V>& c, const Point<V>& p) {
  Simplex<V> supp = support(p);
  if (!c.contains(supp)) throw Error(Errc::invalid_point, "[support-is-simplex] point support is not a simplex");
  return supp;
}

Simplex<VertexId> carrier(const PolyhedralSpace& space, const BarycentricPoint& p);

/// The same point expressed in the coordinates of a finer stage.
BarycentricPoint refine_point(const PolyhedralSpace& space, const BarycentricPoint& p, int target_level);

/// A union of open vertex stars of the stage-`level` complex.
struct StarSet {
  int level = 0;
  std::set<VertexId> core;

  friend bool operator==(const StarSet&, const StarSet&) = default;
};

/// Checks the core is a nonempty set of stage vertices.
void validate_star_set(const PolyhedralSpace& space, const StarSet& s);

bool star_contains(const PolyhedralSpace& space, const StarSet& s, const BarycentricPoint& p);

/// Re-expresses s at a finer level; denotes the identical point set.
StarSet push_star(const PolyhedralSpace& space, const StarSet& s, int target_level);

/// Per-vertex membership mask of the core of s pushed to `level`, indexed by
/// the stage index of that level.
std::vector<char> core_mask_at(const PolyhedralSpace& space, const StarSet& s, int level);

/// Per-simplex mask: simplices of the stage meeting the given core mask,
/// i.e. the open simplices making up the star-set.
std::vector<char> star_simplex_mask(const StageIndex& index, const std::vector<char>& core_mask);

enum class StarRelation { disjoint, s1_subset_s2, s2_subset_s1, overlapping, equal };

std::string_view to_string(StarRelation r);

StarRelation star_relation(const PolyhedralSpace& space, const StarSet& s1, const StarSet& s2);

/// s1 ⊆ s2 as point sets (equal counts).
inline bool star_subset(const PolyhedralSpace& space, const StarSet& s1, const StarSet& s2) {
  const auto r = star_relation(space, s1, s2);
  return r == StarRelation::s1_subset_s2 || r == StarRelation::equal;
}

/// Affine image of p under g: coordinates are summed over the fibres of g.
template <class V, class W>
Point<W> realize_map(const SimplicialMap<V, W>& g, const Point<V>& p) {
  carrier(g.source, p);
  Point<W> out;
  out.level = p.level;
  for (const auto& [v, x] : p.coords) {
    if (x == 0) continue;
    out.coords[g.image(v)] += x;
  }
  return out;
}

}  // namespace nervelab
