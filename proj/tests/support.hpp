#pragma once

// Seeded generators and brute-force oracles shared by the unit tests and
// the acceptance binary. Oracles avoid the membership tables, the search
// kernels and push_star: they work on explicit rational points.

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "nervelab/cover.hpp"
#include "nervelab/dimension.hpp"
#include "nervelab/realization.hpp"
#include "nervelab/selection.hpp"

namespace nervelab::testing {

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
inline bool coin(Rng& rng, int percent) { return uniform(rng, 0, 99) < percent; }

/// Base-level barycentric coordinates of every stage-`level` vertex,
/// computed by averaging carrier vertices stage by stage.
inline std::map<VertexId, BarycentricPoint> vertex_positions(const PolyhedralSpace& space, int level) {
  std::map<VertexId, BarycentricPoint> pos;
  for (const auto& v : space.base().vertices()) pos[v] = BarycentricPoint{0, {{v, Rational(1)}}};
  for (int l = 1; l <= level; ++l) {
    std::map<VertexId, BarycentricPoint> next;
    for (const auto& [v, sigma] : space.stage(l).carrier_of_vertex) {
      BarycentricPoint p;
      const Rational w(1, static_cast<long long>(sigma.size()));
      for (const auto& u : sigma)
        for (const auto& [b, x] : pos.at(u).coords) p.coords[b] += w * x;
      next[v] = std::move(p);
    }
    pos = std::move(next);
  }
  return pos;
}

/// A stage-`level` point written in base coordinates.
inline BarycentricPoint to_base(const std::map<VertexId, BarycentricPoint>& positions, const BarycentricPoint& p) {
  BarycentricPoint out;
  for (const auto& [v, x] : p.coords)
    for (const auto& [b, y] : positions.at(v).coords) out.coords[b] += x * y;
  for (auto it = out.coords.begin(); it != out.coords.end();)
    it = it->second == 0 ? out.coords.erase(it) : std::next(it);
  return out;
}

/// One interior point (in base coordinates) of every open stage-`level`
/// simplex: star-sets of level ≤ `level` are unions of these open simplices,
/// so membership of the probes determines a star-set as a point set.
inline std::vector<BarycentricPoint> probes(const PolyhedralSpace& space, int level) {
  const auto pos = vertex_positions(space, level);
  std::vector<BarycentricPoint> out;
  for (const auto& s : space.stage(level).complex.simplices()) {
    BarycentricPoint p{level, {}};
    for (const auto& v : s) p.coords[v] = Rational(1, static_cast<long long>(s.size()));
    out.push_back(to_base(pos, p));
  }
  return out;
}

/// Membership of a base point in a star-set via refine_point and carriers.
inline bool point_in(const PolyhedralSpace& space, const StarSet& s, const BarycentricPoint& base_point) {
  return star_contains(space, s, refine_point(space, base_point, s.level));
}

inline std::vector<char> signature(const PolyhedralSpace& space, const StarSet& s,
                                   const std::vector<BarycentricPoint>& pts) {
  std::vector<char> out;
  for (const auto& p : pts) out.push_back(point_in(space, s, p) ? 1 : 0);
  return out;
}

/// Nerve of the first kappa levels by brute force over element subsets:
/// a subset spans a simplex iff some probe lies in all of its elements.
inline Complex<NerveVertex> nerve_oracle(const CoverSequence& cs, int kappa, bool delta) {
  const auto pts = probes(cs.space(), cs.working_level());
  std::vector<NerveVertex> elements;
  std::vector<std::vector<char>> sig;
  for (int n = 0; n < kappa; ++n)
    for (const auto& e : cs.levels()[static_cast<std::size_t>(n)]) {
      elements.push_back({e.id, n});
      sig.push_back(signature(cs.space(), e.set, pts));
    }
  ComplexBuilder<NerveVertex> b;
  const std::size_t count = elements.size();
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << count); ++mask) {
    Simplex<NerveVertex> s;
    std::set<int> levels;
    bool one_per_level = true;
    for (std::size_t i = 0; i < count; ++i) {
      if (!(mask >> i & 1U)) continue;
      s.push_back(elements[i]);
      one_per_level &= levels.insert(elements[i].level).second;
    }
    if (delta && !one_per_level) continue;
    bool kernel = false;
    for (std::size_t p = 0; p < pts.size() && !kernel; ++p) {
      bool all = true;
      for (std::size_t i = 0; i < count && all; ++i)
        if (mask >> i & 1U) all = sig[i][p] != 0;
      kernel = all;
    }
    if (kernel) b.add(make_simplex(std::move(s)));
  }
  return std::move(b).build();
}

/// Star-set relation by comparing probe signatures at the finer level.
inline StarRelation relation_oracle(const PolyhedralSpace& space, const StarSet& a, const StarSet& b) {
  const auto pts = probes(space, std::max(a.level, b.level));
  const auto sa = signature(space, a, pts);
  const auto sb = signature(space, b, pts);
  bool common = false, only_a = false, only_b = false;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    common |= sa[i] && sb[i];
    only_a |= sa[i] && !sb[i];
    only_b |= sb[i] && !sa[i];
  }
  if (!common) return StarRelation::disjoint;
  if (!only_a && !only_b) return StarRelation::equal;
  if (!only_a) return StarRelation::s1_subset_s2;
  if (!only_b) return StarRelation::s2_subset_s1;
  return StarRelation::overlapping;
}

inline std::vector<VertexId> stage_vertices(const PolyhedralSpace& space, int level) {
  const auto& v = space.stage(level).complex.vertices();
  return {v.begin(), v.end()};
}

/// Random nonempty core at `level`.
inline std::set<VertexId> random_core(Rng& rng, const PolyhedralSpace& space, int level, int percent) {
  const auto vs = stage_vertices(space, level);
  std::set<VertexId> core;
  for (const auto& v : vs)
    if (coin(rng, percent)) core.insert(v);
  if (core.empty()) core.insert(vs[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(vs.size()) - 1))]);
  return core;
}

/// A family of random star-sets at `level` that covers the space.
inline Family random_covering_family(Rng& rng, const PolyhedralSpace& space, int level, int size,
                                     const std::string& prefix) {
  Family family;
  std::set<VertexId> covered;
  for (int i = 0; i < size; ++i) {
    auto core = random_core(rng, space, level, 30);
    covered.insert(core.begin(), core.end());
    family.push_back({prefix + std::to_string(i), StarSet{level, std::move(core)}});
  }
  for (const auto& v : stage_vertices(space, level))
    if (!covered.count(v)) family[static_cast<std::size_t>(uniform(rng, 0, size - 1))].set.core.insert(v);
  return family;
}

/// Connected components of the stage 1-skeleton restricted to `chosen`;
/// distinct components give pairwise-disjoint star-sets.
inline std::vector<std::set<VertexId>> components(const PolyhedralSpace& space, int level,
                                                  const std::set<VertexId>& chosen) {
  const auto& c = space.stage(level).complex;
  std::map<VertexId, std::vector<VertexId>> adj;
  for (const auto& s : c.simplices())
    if (s.size() == 2 && chosen.count(s[0]) && chosen.count(s[1])) {
      adj[s[0]].push_back(s[1]);
      adj[s[1]].push_back(s[0]);
    }
  std::set<VertexId> seen;
  std::vector<std::set<VertexId>> out;
  for (const auto& start : chosen) {
    if (seen.count(start)) continue;
    std::set<VertexId> comp;
    std::vector<VertexId> stack{start};
    seen.insert(start);
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      comp.insert(v);
      for (const auto& u : adj[v])
        if (seen.insert(u).second) stack.push_back(u);
    }
    out.push_back(std::move(comp));
  }
  return out;
}

/// Levels of pairwise-disjoint star-sets (each at a random level up to
/// `working`) whose union covers the space.
inline CoverSequence random_disjoint_sequence(Rng& rng, const SimplicialComplex& base, int working, int levels) {
  PolyhedralSpace space(base);
  std::vector<Family> out;
  std::set<VertexId> covered;  // at the working level
  for (int n = 0; n < levels; ++n) {
    const bool last = n + 1 == levels;
    const int level = last ? working : uniform(rng, 0, working);
    std::set<VertexId> chosen = random_core(rng, space, level, 45);
    if (last)
      for (const auto& v : stage_vertices(space, working))
        if (!covered.count(v)) chosen.insert(v);
    Family family;
    int id = 0;
    for (auto& comp : components(space, level, chosen)) {
      StarSet s{level, std::move(comp)};
      const auto pushed = push_star(space, s, working);
      covered.insert(pushed.core.begin(), pushed.core.end());
      family.push_back({"U" + std::to_string(n) + "_" + std::to_string(id++), std::move(s)});
    }
    out.push_back(std::move(family));
  }
  return CoverSequence::make(space, std::move(out), working);
}

/// Levels of random, possibly overlapping star-sets; every level covers.
inline CoverSequence random_sequence(Rng& rng, const SimplicialComplex& base, int working, int levels) {
  PolyhedralSpace space(base);
  std::vector<Family> out;
  for (int n = 0; n < levels; ++n)
    out.push_back(random_covering_family(rng, space, uniform(rng, 0, working), uniform(rng, 1, 4),
                                         "U" + std::to_string(n) + "_"));
  return CoverSequence::make(space, std::move(out), working);
}

/// Brute-force existence of a C-refinement made of star-sets at `level`:
/// every colouring of the stage vertices by κ families is tried, and the
/// clusters it induces are checked with verify_c_refinement.
inline bool brute_force_c_refinement(const CoverSequence& cs, int kappa, int level) {
  const auto source = cs.padded(kappa);
  const auto& space = source.space();
  const auto vs = stage_vertices(space, level);
  std::vector<int> colour(vs.size(), 0);
  while (true) {
    CRefinement r{std::vector<Family>(static_cast<std::size_t>(kappa)), source};
    for (int k = 0; k < kappa; ++k) {
      std::set<VertexId> chosen;
      for (std::size_t i = 0; i < vs.size(); ++i)
        if (colour[i] == k) chosen.insert(vs[i]);
      for (auto& comp : components(space, level, chosen)) {
        const auto id = *comp.begin();
        r.families[static_cast<std::size_t>(k)].push_back({id, StarSet{level, std::move(comp)}});
      }
    }
    if (verify_c_refinement(r).ok) return true;
    std::size_t i = 0;
    while (i < colour.size() && ++colour[i] == kappa) colour[i++] = 0;
    if (i == colour.size()) return false;
  }
}

}  // namespace nervelab::testing
