#include "nervelab/selection.hpp"

#include <algorithm>
#include <set>

namespace nervelab {

namespace {

void check_source(const CanonicalMap& f, const CoverSequence& cs, Kappa kappa) {
  if (f.subdivision_level < cs.working_level())
    throw Error(Errc::level_mismatch, "map source is level " + std::to_string(f.subdivision_level) +
                                          ", coarser than the cover's working level " +
                                          std::to_string(cs.working_level()));
  const auto& stage = cs.space().stage(f.subdivision_level);
  if (f.map.source.vertices() != stage.complex.vertices())
    throw Error(Errc::level_mismatch, "map source is not the stage-" + std::to_string(f.subdivision_level) + " complex");
  const int k = kappa.resolve(cs.level_count());
  for (const auto& v : stage.complex.vertices()) {
    const auto& image = f.map.image(v);
    if (image.level >= k || cs.flat_index(image) < 0)
      throw Error(Errc::unknown_cover_element, "vertex " + v + " maps to " + to_string(image) +
                                                   ", which is not an element of the first " + std::to_string(k) +
                                                   " levels");
  }
}

std::vector<int> flat_images(const CanonicalMap& f, const CoverSequence& cs, const StageIndex& index) {
  std::vector<int> images(index.names.size());
  for (std::size_t v = 0; v < index.names.size(); ++v) images[v] = cs.flat_index(f.map.image(index.names[v]));
  return images;
}

template <class Sweep>
Verdict selection_verdict(const CanonicalMap& f, const CoverSequence& cs, Kappa kappa, Sweep sweep) {
  check_source(f, cs, kappa);
  const auto fine = cs.refined_to(f.subdivision_level);
  const auto& index = *fine.working_stage().index;
  const auto images = flat_images(f, fine, index);
  const int s = sweep(index, fine.membership(), images);
  if (s < 0) return Verdict::pass();
  const auto tau = index.simplex_names(s);
  std::vector<std::string> witness{simplex_token(tau)};
  for (const auto& v : tau) {
    const int e = images[static_cast<std::size_t>(index.vertex(v))];
    const auto& row = fine.membership()[static_cast<std::size_t>(s)];
    if (!std::binary_search(row.begin(), row.end(), e)) witness.push_back(to_string(fine.flat_vertex(e)));
  }
  return Verdict::fail("image-kernel-contains-carrier", std::move(witness));
}

}  // namespace

Verdict check_canonical(const CanonicalMap& f, const CoverSequence& cs, Kappa kappa) {
  check_source(f, cs, kappa);
  std::map<NerveVertex, std::set<VertexId>> preimage;
  for (const auto& [v, image] : f.map.vertex_images) preimage[image].insert(v);
  for (const auto& [u, core] : preimage) {
    const StarSet pulled{f.subdivision_level, core};
    if (!star_subset(cs.space(), pulled, cs.element(u).set)) {
      std::vector<std::string> witness{to_string(u)};
      witness.insert(witness.end(), core.begin(), core.end());
      return Verdict::fail("star-preimage-inside-element", std::move(witness));
    }
  }
  return Verdict::pass();
}

Verdict check_selection(const CanonicalMap& f, const CoverSequence& cs, Kappa kappa) {
  return selection_verdict(f, cs, kappa, kernels::first_selection_violation);
}

Verdict check_selection_serial(const CanonicalMap& f, const CoverSequence& cs, Kappa kappa) {
  return selection_verdict(f, cs, kappa, kernels::first_selection_violation_serial);
}

CanonicalMap build_canonical(const CoverSequence& cs, Kappa kappa, TargetKind kind, std::optional<int> level) {
  const int k = kappa.resolve(cs.level_count());
  if (kind == TargetKind::delta) {
    for (int n = 0; n < k; ++n)
      if (!cs.level_pairwise_disjoint(n))
        throw Error(Errc::not_pairwise_disjoint,
                    "[delta-equals-nerve-on-disjoint-levels] level " + std::to_string(n) +
                        " has overlapping elements; refine it to a C-refinement first");
  }
  if (!cs.prefix_covers(k)) throw Error(Errc::no_coverage, "[covers] the first levels leave a point uncovered");
  const int m = level.value_or(cs.working_level());
  const auto fine = cs.refined_to(m);
  const auto& index = *fine.working_stage().index;

  CanonicalMap f;
  f.subdivision_level = m;
  f.map.source = fine.working_stage().complex;
  f.map.target = kind == TargetKind::delta ? delta_subcomplex(cs, Kappa::finite(k)).complex
                                           : nerve(cs, Kappa::finite(k)).complex;
  // Flat order is (level, id), so the first hit is the tie-break.
  for (std::size_t v = 0; v < index.names.size(); ++v) {
    for (int e = 0; e < fine.level_offset(k); ++e) {
      if (fine.core_mask(e)[v]) {
        f.map.vertex_images.emplace(index.names[v], fine.flat_vertex(e));
        break;
      }
    }
  }
  return f;
}

CanonicalMap transfer_selection(const CanonicalMap& h, const SimplicialMap<NerveVertex, NerveVertex>& r) {
  if (!h.map.target.subcomplex_of(r.source))
    throw Error(Errc::compose_error, "[composable] the map's target is not inside the refinement map's domain");
  return {h.subdivision_level, compose(r, h.map)};
}

CRefinement extract_c_refinement(const CanonicalMap& f, const CoverSequence& cs, Kappa kappa) {
  const auto verdict = check_canonical(f, cs, kappa);
  if (!verdict.ok)
    throw Error(Errc::not_canonical,
                "[star-preimage-inside-element] preimage of " + verdict.witness.front() + " leaves its element");
  const int k = kappa.resolve(cs.level_count());
  std::map<NerveVertex, std::set<VertexId>> preimage;
  for (const auto& [v, image] : f.map.vertex_images) preimage[image].insert(v);
  CRefinement r{std::vector<Family>(static_cast<std::size_t>(k)), cs};
  for (auto& [u, core] : preimage)
    r.families[static_cast<std::size_t>(u.level)].push_back({u.element, StarSet{f.subdivision_level, std::move(core)}});
  return r;
}

SimplicialMap<VertexId, VertexId> cone_extend(const SimplicialMap<VertexId, VertexId>& g, const VertexId& v,
                                              const VertexId& q, const std::vector<SimplicialComplex>& chain) {
  if (chain.empty()) throw Error(Errc::witness_failure, "[cone-witness] empty chain");
  const int n = static_cast<int>(chain.size()) - 2;
  if (g.source.dim() > n)
    throw Error(Errc::skeleton_violation, "[skeleton-bound] dim of the domain exceeds the chain length minus two");
  for (std::size_t k = 0; k < chain.size(); ++k)
    if (!chain[k].subcomplex_of(g.target))
      throw Error(Errc::witness_failure, "[chain-in-target] S_" + std::to_string(k) + " is not inside the target");
  if (!g.target.has_vertex(q)) throw Error(Errc::witness_failure, "[cone-witness] " + q + " is not a target vertex");
  if (!chain.front().has_vertex(q)) throw Error(Errc::witness_failure, "[cone-witness] " + q + " is not in S_0");
  for (std::size_t k = 0; k + 1 < chain.size(); ++k)
    if (!join_apex(chain[k], q).subcomplex_of(chain[k + 1]))
      throw Error(Errc::witness_failure,
                  "[cone-witness] S_" + std::to_string(k) + " * " + q + " is not inside S_" + std::to_string(k + 1));
  for (const auto& s : g.source.simplices()) {
    if (!chain[s.size() - 1].contains(g.image(s)))
      throw Error(Errc::skeleton_violation, "[skeleton-images] " + simplex_token(s) + " maps outside S_" +
                                                std::to_string(s.size() - 1));
  }
  SimplicialMap<VertexId, VertexId> h{cone(g.source, v), g.target, g.vertex_images};
  h.vertex_images.emplace(v, q);
  return h;
}

Verdict check_skeleton_images(const SimplicialMap<VertexId, VertexId>& h, const std::vector<SimplicialComplex>& chain) {
  for (const auto& s : h.source.simplices()) {
    const std::size_t k = s.size() - 1;
    if (k >= chain.size())
      return Verdict::fail("skeleton-images", {simplex_token(s), "no S_" + std::to_string(k) + " in the chain"});
    if (!chain[k].contains(h.image(s)))
      return Verdict::fail("skeleton-images", {simplex_token(s), simplex_token(h.image(s))});
  }
  return Verdict::pass();
}

CarrierMappingSequence CarrierMappingSequence::make(PolyhedralSpace space, int level, SimplicialComplex target,
                                                    std::vector<Table> tables, std::optional<VertexId> cone_witness) {
  if (tables.empty()) throw Error(Errc::arity_error, "a mapping sequence needs at least one table");
  const auto& stage = space.stage(level);
  for (std::size_t k = 0; k < tables.size(); ++k) {
    const auto where = "table " + std::to_string(k) + " ";
    for (const auto& [tau, value] : tables[k])
      if (!stage.complex.contains(tau))
        throw Error(Errc::unknown_carrier, where + "key " + simplex_token(tau) + " is not a stage simplex");
    for (const auto& tau : stage.complex.simplices()) {
      auto it = tables[k].find(tau);
      if (it == tables[k].end() || it->second.empty())
        throw Error(Errc::empty_value, "[nonempty-values] " + where + "has no value at " + simplex_token(tau));
      if (!it->second.subcomplex_of(target))
        throw Error(Errc::invalid_complex, where + "value at " + simplex_token(tau) + " is not inside the target");
      // Checking against facets covers all faces by transitivity.
      for (std::size_t drop = 0; drop < tau.size() && tau.size() > 1; ++drop) {
        Simplex<VertexId> facet = tau;
        facet.erase(facet.begin() + static_cast<std::ptrdiff_t>(drop));
        if (!tables[k].at(facet).subcomplex_of(it->second))
          throw Error(Errc::not_carrier_monotone, "[carrier-monotone] " + where + "value at " + simplex_token(facet) +
                                                      " is not inside the value at " + simplex_token(tau));
      }
    }
  }
  if (cone_witness) {
    const auto& q = *cone_witness;
    if (!target.has_vertex(q)) throw Error(Errc::witness_failure, "[cone-witness] " + q + " is not a target vertex");
    for (const auto& [tau, value] : tables.front())
      if (!value.has_vertex(q))
        throw Error(Errc::witness_failure, "[cone-witness] " + q + " is missing from table 0 at " + simplex_token(tau));
    for (std::size_t k = 0; k + 1 < tables.size(); ++k)
      for (const auto& [tau, value] : tables[k])
        if (!join_apex(value, q).subcomplex_of(tables[k + 1].at(tau)))
          throw Error(Errc::witness_failure, "[cone-witness] table " + std::to_string(k) + " at " + simplex_token(tau) +
                                                 " coned by " + q + " is not inside table " + std::to_string(k + 1));
  }
  CarrierMappingSequence phi;
  phi.space_ = std::move(space);
  phi.level_ = level;
  phi.target_ = std::move(target);
  phi.tables_ = std::move(tables);
  phi.cone_witness_ = std::move(cone_witness);
  return phi;
}

const SimplicialComplex& CarrierMappingSequence::value(int k, const Simplex<VertexId>& tau, int from_level) const {
  if (k < 0 || k >= table_count())
    throw Error(Errc::arity_error, "no table " + std::to_string(k) + " (have " + std::to_string(table_count()) + ")");
  return tables_[static_cast<std::size_t>(k)].at(space_.coarse_carrier(tau, from_level, level_));
}

VertexSelection vertex_selection(const CarrierMappingSequence& phi) {
  VertexSelection s;
  for (const auto& v : phi.space().stage(phi.level()).complex.vertices()) {
    s.cover.push_back({v, StarSet{phi.level(), {v}}});
    s.image.emplace(v, *phi.value(0, {v}, phi.level()).vertices().begin());
  }
  return s;
}

Verdict check_vertex_selection(const VertexSelection& s, const CarrierMappingSequence& phi) {
  for (const auto& element : s.cover) {
    auto it = s.image.find(element.id);
    if (it == s.image.end()) return Verdict::fail("vertex-selection-total", {element.id});
    const int level = std::max(element.set.level, phi.level());
    const auto& stage = phi.space().stage(level);
    const auto mask = core_mask_at(phi.space(), element.set, level);
    // x ∈ F exactly when the carrier of x meets the core of F.
    for (int t = 0; t < static_cast<int>(stage.index->simplices.size()); ++t) {
      const auto& simplex = stage.index->simplices[static_cast<std::size_t>(t)];
      if (std::none_of(simplex.begin(), simplex.end(), [&](int v) { return mask[static_cast<std::size_t>(v)] != 0; }))
        continue;
      const auto tau = stage.index->simplex_names(t);
      if (!phi.value(0, tau, level).has_vertex(it->second))
        return Verdict::fail("vertex-image-in-value", {element.id, simplex_token(tau), it->second});
    }
  }
  return Verdict::pass();
}

SkeletalSelection lift_to_delta(const VertexSelection& s, const CarrierMappingSequence& phi) {
  auto cs = CoverSequence::make(phi.space(), {s.cover}, phi.level());
  SkeletalSelection out{cs, {delta_subcomplex(cs, Kappa::omega()).complex, phi.target(), {}}};
  for (const auto& [id, y] : s.image) out.map.vertex_images.emplace(NerveVertex{id, 0}, y);
  return out;
}

namespace {

/// Calls visit(sigma, tau) for every Δ-simplex sigma of cs and every
/// working-stage simplex tau meeting all of sigma's elements, until visit
/// returns false.
template <class Visit>
bool for_each_kernel_pair(const CoverSequence& cs, Visit visit) {
  const auto& index = *cs.working_stage().index;
  for (std::size_t t = 0; t < index.simplices.size(); ++t) {
    const auto& row = cs.membership()[t];
    std::vector<std::vector<int>> groups(static_cast<std::size_t>(cs.level_count()));
    for (int e : row) groups[static_cast<std::size_t>(cs.flat_vertex(e).level)].push_back(e);
    // pick[n] = -1 leaves level n out of sigma.
    std::vector<int> pick(groups.size(), -1);
    const auto tau = index.simplex_names(static_cast<int>(t));
    while (true) {
      std::size_t g = 0;
      while (g < groups.size() && ++pick[g] == static_cast<int>(groups[g].size())) pick[g++] = -1;
      if (g == groups.size()) break;
      Simplex<NerveVertex> sigma;
      for (std::size_t n = 0; n < groups.size(); ++n)
        if (pick[n] >= 0) sigma.push_back(cs.flat_vertex(groups[n][static_cast<std::size_t>(pick[n])]));
      if (!visit(sigma, tau)) return false;
    }
  }
  return true;
}

template <class TableOf>
Verdict skeletal_verdict(const SkeletalSelection& f, const CarrierMappingSequence& phi, const char* check,
                         TableOf table_of) {
  const int n = f.cs.level_count() - 1;
  if (n + 1 > phi.table_count())
    throw Error(Errc::arity_error, "selection on " + std::to_string(n + 1) + " levels needs that many tables, have " +
                                       std::to_string(phi.table_count()));
  if (f.cs.working_level() < phi.level())
    throw Error(Errc::level_mismatch, "cover sequence is coarser than the mapping tables");
  Verdict out;
  for_each_kernel_pair(f.cs, [&](const Simplex<NerveVertex>& sigma, const Simplex<VertexId>& tau) {
    const int k = table_of(static_cast<int>(sigma.size()) - 1, n);
    const auto image = f.map.image(sigma);
    if (phi.value(k, tau, f.cs.working_level()).contains(image)) return true;
    std::vector<std::string> witness;
    for (const auto& u : sigma) witness.push_back(to_string(u));
    witness.push_back(simplex_token(tau));
    witness.push_back(simplex_token(image));
    out = Verdict::fail(check, std::move(witness));
    return false;
  });
  return out;
}

}  // namespace

Verdict check_skeletal_selection(const SkeletalSelection& f, const CarrierMappingSequence& phi) {
  return skeletal_verdict(f, phi, "skeletal-images-in-values", [](int k, int) { return k; });
}

Verdict check_union_selection(const SkeletalSelection& f, const CarrierMappingSequence& phi) {
  return skeletal_verdict(f, phi, "delta-image-in-top-value", [](int, int n) { return n; });
}

SkeletalSelection extend_skeletal_selection(const SkeletalSelection& f, const CarrierMappingSequence& phi) {
  if (!phi.cone_witness()) throw Error(Errc::no_cone_witness, "[cone-witness] the mapping sequence has no cone vertex");
  const int next = f.cs.level_count();
  if (next >= phi.table_count())
    throw Error(Errc::arity_error, "extending to level " + std::to_string(next) + " needs table " +
                                       std::to_string(next) + ", have " + std::to_string(phi.table_count()));
  Family stars;
  for (const auto& v : f.cs.working_stage().complex.vertices())
    stars.push_back({v, StarSet{f.cs.working_level(), {v}}});
  const auto cs = f.cs.with_level(std::move(stars));
  SkeletalSelection out{cs, {delta_subcomplex(cs, Kappa::omega()).complex, f.map.target, f.map.vertex_images}};
  for (const auto& v : cs.working_stage().complex.vertices())
    out.map.vertex_images.emplace(NerveVertex{v, next}, *phi.cone_witness());
  return out;
}

}  // namespace nervelab
