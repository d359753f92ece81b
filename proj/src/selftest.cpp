#include "nervelab/selftest.hpp"

#include "nervelab/dimension.hpp"
#include "nervelab/fixtures.hpp"

namespace nervelab {

namespace {

class Table {
 public:
  void record(const std::string& property, bool ok) {
    for (auto& row : rows_) {
      if (row.property == property) {
        (ok ? row.passed : row.failed) += 1;
        return;
      }
    }
    rows_.push_back({property, ok ? 1 : 0, ok ? 0 : 1});
  }

  /// Records a failure instead of propagating an exception.
  template <class F>
  void run(const std::string& property, F check) {
    try {
      check();
    } catch (const std::exception&) {
      record(property, false);
    }
  }

  std::vector<SelftestRow> rows() && { return std::move(rows_); }

 private:
  std::vector<SelftestRow> rows_;
};

bool delta_equals_nerve(const CoverSequence& cs) {
  return delta_subcomplex(cs, Kappa::omega()).complex == nerve(cs, Kappa::omega()).complex;
}

bool cone_monotone(const CoverSequence& cs) {
  for (const auto& tau : cs.working_stage().complex.simplices()) {
    for (int n = 0; n + 1 < cs.level_count(); ++n) {
      const auto lower = delta_at_carrier(cs, Kappa::finite(n + 1), tau);
      const auto upper = delta_at_carrier(cs, Kappa::finite(n + 2), tau);
      for (const auto& v : upper.vertices())
        if (v.level == n + 1 && !join_apex(lower, v).subcomplex_of(upper)) return false;
    }
  }
  return true;
}

/// Sends one vertex to an element its star misses; predicates must agree.
bool corrupted_agree(CanonicalMap f, const CoverSequence& cs, Kappa kappa) {
  const int k = kappa.resolve(cs.level_count());
  const auto fine = cs.refined_to(f.subdivision_level);
  const auto& index = *fine.working_stage().index;
  for (std::size_t v = 0; v < index.names.size(); ++v) {
    for (int e = 0; e < fine.level_offset(k); ++e) {
      if (fine.core_mask(e)[v]) continue;
      auto g = f;
      g.map.vertex_images[index.names[v]] = fine.flat_vertex(e);
      return is_canonical(g, cs, kappa) == is_selection(g, cs, kappa) && !is_canonical(g, cs, kappa);
    }
  }
  return true;
}

bool round_trip(const CoverSequence& cs, int n) {
  const auto r = ostrand_refine(cs, n);
  if (!verify_c_refinement(r).ok) return false;
  const auto kappa = Kappa::finite(n + 1);
  const auto fine = as_cover_sequence(r);
  const auto h = build_canonical(fine, kappa, TargetKind::delta);
  const auto f = transfer_selection(h, refinement_map(fine, r.source, kappa));
  return check_simplicial_map(f.map) && is_canonical(f, r.source, kappa) && is_selection(f, r.source, kappa) &&
         verify_c_refinement(extract_c_refinement(f, r.source, kappa)).ok;
}

bool skeletal_chain(const SimplicialComplex& base) {
  const auto phi = fixtures::skeletal_tables(base, 4);
  const auto s = vertex_selection(phi);
  if (!check_vertex_selection(s, phi).ok) return false;
  auto f = lift_to_delta(s, phi);
  for (int step = 0; step < 3; ++step) {
    if (!check_skeletal_selection(f, phi).ok || !check_union_selection(f, phi).ok) return false;
    f = extend_skeletal_selection(f, phi);
  }
  return check_skeletal_selection(f, phi).ok && check_union_selection(f, phi).ok;
}

}  // namespace

std::vector<SelftestRow> run_selftest() {
  Table t;
  const auto edge = fixtures::edge();
  const auto tri = fixtures::triangle();
  const auto boundary = fixtures::triangle_boundary();
  const auto rem = fixtures::remark_cover();

  t.run("dimension-oracle", [&] {
    t.record("dimension-oracle", dim_oracle(PolyhedralSpace(edge)) == 1);
    t.record("dimension-oracle", dim_oracle(PolyhedralSpace(tri)) == 2);
    t.record("dimension-oracle", dim_oracle(PolyhedralSpace(boundary)) == 1);
  });

  t.run("delta-equals-nerve-on-disjoint-levels", [&] {
    for (const auto& base : {edge, tri, boundary}) {
      const auto r = ostrand_refine(fixtures::star_cover(base, 3), 2);
      t.record("delta-equals-nerve-on-disjoint-levels", delta_equals_nerve(as_cover_sequence(r)));
    }
    const Family p1{{"P'", StarSet{1, {"{a}"}}}};
    const Family q{{"Q", StarSet{1, {"{a,b}", "{b}"}}}};
    t.record("delta-equals-nerve-on-disjoint-levels",
             delta_equals_nerve(CoverSequence::make(rem.space(), {p1, q}, 1)));
  });

  t.run("delta-cone-monotone", [&] {
    t.record("delta-cone-monotone", cone_monotone(rem));
    t.record("delta-cone-monotone", cone_monotone(fixtures::star_cover(tri, 3)));
    t.record("delta-cone-monotone", cone_monotone(fixtures::star_cover(boundary, 3)));
  });

  t.run("indexed-prefix-inclusion", [&] {
    const auto d1 = delta_subcomplex(rem, Kappa::finite(2)).complex;
    const auto d2 = delta_subcomplex(rem, Kappa::finite(3)).complex;
    t.record("indexed-prefix-inclusion", d1.subcomplex_of(d2));
  });

  t.run("unindexed-prefix-inclusion-fails", [&] {
    const auto u1 = unindexed_delta(rem, Kappa::finite(2));
    const auto u2 = unindexed_delta(rem, Kappa::finite(3));
    const Simplex<std::string> pq{"P", "Q"};
    t.record("unindexed-prefix-inclusion-fails", u1.contains(pq) && !u2.contains(pq));
  });

  t.run("canonical-iff-selection", [&] {
    for (const auto& cs : {rem, fixtures::star_cover(tri, 3), fixtures::star_cover(boundary, 2)}) {
      for (int level : {cs.working_level(), cs.working_level() + 1}) {
        const auto f = build_canonical(cs, Kappa::omega(), TargetKind::nerve, level);
        t.record("canonical-iff-selection", is_canonical(f, cs, Kappa::omega()) && is_selection(f, cs, Kappa::omega()));
        t.record("canonical-iff-selection", corrupted_agree(f, cs, Kappa::omega()));
      }
    }
  });

  t.run("c-refinement-round-trip", [&] {
    t.record("c-refinement-round-trip", round_trip(fixtures::star_cover(tri, 3), 2));
    t.record("c-refinement-round-trip", round_trip(fixtures::whole_cover(edge, 1), 1));
    t.record("c-refinement-round-trip", round_trip(rem, 1));
  });

  t.run("search-dimension-separation", [&] {
    const auto stars = fixtures::star_cover(tri, 3);
    t.record("search-dimension-separation", !search_c_refinement(stars, 2, 1).found());
    const auto three = search_c_refinement(stars, 3, 1);
    t.record("search-dimension-separation", three.found() && verify_c_refinement(*three.refinement).ok);
    const auto two = search_c_refinement(fixtures::star_cover(edge, 2), 2, 2);
    t.record("search-dimension-separation", two.found() && two.level == 1);
  });

  t.run("cone-extension-skeleton-bounds", [&] {
    SimplicialMap<VertexId, VertexId> g{SimplicialComplex::closure_of({{"a"}, {"b"}}),
                                        SimplicialComplex::closure_of({{"q", "y_a", "y_b"}}),
                                        {{"a", "y_a"}, {"b", "y_b"}}};
    const std::vector<SimplicialComplex> chain{SimplicialComplex::closure_of({{"y_a"}, {"y_b"}, {"q"}}), g.target};
    const auto h = cone_extend(g, "v", "q", chain);
    t.record("cone-extension-skeleton-bounds", check_skeleton_images(h, chain).ok);
  });

  t.run("skeletal-selection-extension", [&] {
    t.record("skeletal-selection-extension", skeletal_chain(edge));
    t.record("skeletal-selection-extension", skeletal_chain(tri));
  });

  return std::move(t).rows();
}

}  // namespace nervelab
