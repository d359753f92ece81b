#include "nervelab/cover.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace nervelab {

std::string to_string(const NerveVertex& v) { return v.element + "@" + std::to_string(v.level); }

int Kappa::resolve(int levels) const {
  if (is_omega()) {
    if (levels == 0) throw Error(Errc::empty_prefix, "[kappa>0] the cover sequence has no levels");
    return levels;
  }
  if (value_ == 0) throw Error(Errc::empty_prefix, "[kappa>0] kappa must be positive");
  if (value_ > levels)
    throw Error(Errc::prefix_too_long,
                "kappa=" + std::to_string(value_) + " exceeds the " + std::to_string(levels) + " available levels");
  return value_;
}

CoverSequence CoverSequence::make(PolyhedralSpace space, std::vector<Family> levels, std::optional<int> working_level) {
  int work = working_level.value_or(0);
  if (work < 0) throw Error(Errc::invalid_cover, "negative working level");
  for (const auto& family : levels)
    for (const auto& e : family) work = std::max(work, e.set.level);

  auto data = std::make_shared<Data>(Data{space, work, {}, {}, {}, {}, {}});
  const auto& index = *space.stage(work).index;

  data->offsets.push_back(0);
  for (std::size_t n = 0; n < levels.size(); ++n) {
    Family family = std::move(levels[n]);
    std::sort(family.begin(), family.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    for (std::size_t i = 0; i < family.size(); ++i) {
      if (family[i].id.empty()) throw Error(Errc::invalid_cover, "[element-id] empty element id");
      if (i > 0 && family[i].id == family[i - 1].id)
        throw Error(Errc::invalid_cover,
                    "[unique-ids] duplicate element id '" + family[i].id + "' in level " + std::to_string(n));
      validate_star_set(space, family[i].set);
      family[i].set = push_star(space, family[i].set, work);
      data->flat.push_back(NerveVertex{family[i].id, static_cast<int>(n)});
      data->core_masks.push_back(core_mask_at(space, family[i].set, work));
    }
    data->offsets.push_back(data->offsets.back() + static_cast<int>(family.size()));
    data->levels.push_back(std::move(family));
  }
  data->meets = kernels::membership(index, data->core_masks);

  CoverSequence cs(std::move(data));
  if (!cs.prefix_covers(cs.level_count()))
    throw Error(Errc::invalid_cover, "[covers] the union of the levels misses a working-stage vertex");
  return cs;
}

int CoverSequence::flat_index(const NerveVertex& v) const {
  if (v.level < 0 || v.level >= level_count()) return -1;
  const auto& family = data_->levels[static_cast<std::size_t>(v.level)];
  auto it = std::lower_bound(family.begin(), family.end(), v.element,
                             [](const CoverElement& e, const std::string& id) { return e.id < id; });
  if (it == family.end() || it->id != v.element) return -1;
  return level_offset(v.level) + static_cast<int>(it - family.begin());
}

const CoverElement& CoverSequence::element(const NerveVertex& v) const {
  const int i = flat_index(v);
  if (i < 0) throw Error(Errc::unknown_cover_element, "no element " + to_string(v));
  return data_->levels[static_cast<std::size_t>(v.level)][static_cast<std::size_t>(i - level_offset(v.level))];
}

namespace {

bool range_covers(const CoverSequence& cs, int begin, int end) {
  const auto vertex_count = cs.working_stage().index->names.size();
  for (std::size_t v = 0; v < vertex_count; ++v) {
    bool hit = false;
    for (int e = begin; e < end && !hit; ++e) hit = cs.core_mask(e)[v] != 0;
    if (!hit) return false;
  }
  return true;
}

}  // namespace

bool CoverSequence::level_covers(int n) const { return range_covers(*this, level_offset(n), level_offset(n + 1)); }

bool CoverSequence::covers_each_level() const {
  for (int n = 0; n < level_count(); ++n)
    if (!level_covers(n)) return false;
  return true;
}

bool CoverSequence::prefix_covers(int kappa) const { return range_covers(*this, 0, level_offset(kappa)); }

bool CoverSequence::level_pairwise_disjoint(int n) const {
  const auto& index = *working_stage().index;
  const int begin = level_offset(n);
  const int end = level_offset(n + 1);
  for (const auto& row : membership()) {
    const auto lo = std::lower_bound(row.begin(), row.end(), begin);
    const auto hi = std::lower_bound(row.begin(), row.end(), end);
    if (hi - lo > 1) return false;
  }
  (void)index;
  return true;
}

CoverSequence CoverSequence::refined_to(int level) const {
  if (level < working_level()) throw Error(Errc::cannot_coarsen, "cover sequences only move to finer levels");
  if (level == working_level()) return *this;
  return make(space(), levels(), level);
}

CoverSequence CoverSequence::padded(int count) const {
  if (level_count() >= count) return *this;
  if (level_count() == 0) throw Error(Errc::invalid_cover, "cannot pad an empty cover sequence");
  auto lv = levels();
  while (static_cast<int>(lv.size()) < count) lv.push_back(lv.back());
  return make(space(), std::move(lv), working_level());
}

CoverSequence CoverSequence::with_level(Family family) const {
  auto lv = levels();
  lv.push_back(std::move(family));
  return make(space(), std::move(lv), working_level());
}

namespace {

std::vector<int> prefix_row(const std::vector<int>& row, int limit) {
  return {row.begin(), std::lower_bound(row.begin(), row.end(), limit)};
}

/// Adds to `b` every simplex spanned by `row` with at most one element per
/// level (delta) or every subset (full nerve).
void add_generated(const CoverSequence& cs, const std::vector<int>& row, bool delta, ComplexBuilder<NerveVertex>& b) {
  if (row.empty()) return;
  if (!delta) {
    Simplex<NerveVertex> s;
    for (int e : row) s.push_back(cs.flat_vertex(e));
    b.add(make_simplex(std::move(s)));
    return;
  }
  // One element per level present in the row; the builder adds the faces.
  std::vector<std::vector<int>> groups;
  int last_level = -1;
  for (int e : row) {
    const int level = cs.flat_vertex(e).level;
    if (level != last_level) {
      groups.emplace_back();
      last_level = level;
    }
    groups.back().push_back(e);
  }
  std::vector<std::size_t> pick(groups.size(), 0);
  while (true) {
    Simplex<NerveVertex> s;
    for (std::size_t g = 0; g < groups.size(); ++g) s.push_back(cs.flat_vertex(groups[g][pick[g]]));
    b.add(make_simplex(std::move(s)));
    std::size_t g = 0;
    while (g < groups.size() && ++pick[g] == groups[g].size()) pick[g++] = 0;
    if (g == groups.size()) break;
  }
}

NerveComplex build_nerve(const CoverSequence& cs, Kappa kappa, bool delta) {
  const int k = kappa.resolve(cs.level_count());
  const int limit = cs.level_offset(k);
  const auto& index = *cs.working_stage().index;
  std::set<std::vector<int>> generators;
  for (int s : index.maximal) generators.insert(prefix_row(cs.membership()[static_cast<std::size_t>(s)], limit));
  ComplexBuilder<NerveVertex> b;
  for (const auto& row : generators) add_generated(cs, row, delta, b);
  return std::move(b).build();
}

int carrier_index(const CoverSequence& cs, const Simplex<VertexId>& tau) {
  const int s = cs.working_stage().index->find_simplex(tau);
  if (s < 0) throw Error(Errc::unknown_carrier, simplex_token(tau) + " is not a working-stage simplex");
  return s;
}

}  // namespace

std::optional<Simplex<VertexId>> kernel_query(const CoverSequence& cs, const Simplex<NerveVertex>& sigma) {
  std::vector<int> wanted;
  for (const auto& v : sigma) {
    const int i = cs.flat_index(v);
    if (i < 0) throw Error(Errc::unknown_cover_element, "no element " + to_string(v));
    wanted.push_back(i);
  }
  std::sort(wanted.begin(), wanted.end());
  const auto& index = *cs.working_stage().index;
  const auto& meets = cs.membership();
  std::optional<int> best;
  for (std::size_t s = 0; s < index.simplices.size(); ++s) {
    if (!std::includes(meets[s].begin(), meets[s].end(), wanted.begin(), wanted.end())) continue;
    if (!best || index.simplices[s].size() < index.simplices[static_cast<std::size_t>(*best)].size())
      best = static_cast<int>(s);
  }
  if (!best) return std::nullopt;
  return index.simplex_names(*best);
}

IndexedNerve nerve(const CoverSequence& cs, Kappa kappa) {
  return {build_nerve(cs, kappa, false), IndexedNerve::Kind::full_nerve};
}

IndexedNerve delta_subcomplex(const CoverSequence& cs, Kappa kappa) {
  return {build_nerve(cs, kappa, true), IndexedNerve::Kind::delta};
}

NerveComplex delta_at_carrier(const CoverSequence& cs, Kappa kappa, const Simplex<VertexId>& tau) {
  const int k = kappa.resolve(cs.level_count());
  ComplexBuilder<NerveVertex> b;
  add_generated(cs, prefix_row(cs.membership()[static_cast<std::size_t>(carrier_index(cs, tau))], cs.level_offset(k)),
                true, b);
  return std::move(b).build();
}

NerveComplex nerve_at_carrier(const CoverSequence& cs, Kappa kappa, const Simplex<VertexId>& tau) {
  const int k = kappa.resolve(cs.level_count());
  ComplexBuilder<NerveVertex> b;
  add_generated(cs, prefix_row(cs.membership()[static_cast<std::size_t>(carrier_index(cs, tau))], cs.level_offset(k)),
                false, b);
  return std::move(b).build();
}

SimplicialMap<NerveVertex, NerveVertex> refinement_map(const CoverSequence& fine, const CoverSequence& coarse,
                                                       Kappa kappa) {
  if (!(fine.space() == coarse.space()))
    throw Error(Errc::not_a_refinement, "fine and coarse covers live on different spaces");
  const int k = kappa.resolve(std::min(fine.level_count(), coarse.level_count()));
  SimplicialMap<NerveVertex, NerveVertex> r{delta_subcomplex(fine, Kappa::finite(k)).complex,
                                            delta_subcomplex(coarse, Kappa::finite(k)).complex,
                                            {}};
  for (int n = 0; n < k; ++n) {
    for (const auto& v : fine.levels()[static_cast<std::size_t>(n)]) {
      const CoverElement* chosen = nullptr;
      // Coarse families are sorted by id, so the first hit is the tie-break.
      for (const auto& u : coarse.levels()[static_cast<std::size_t>(n)]) {
        if (star_subset(fine.space(), v.set, u.set)) {
          chosen = &u;
          break;
        }
      }
      if (chosen == nullptr)
        throw Error(Errc::not_a_refinement, "[refines] element " + to_string(NerveVertex{v.id, n}) +
                                                " lies in no element of the coarse level " + std::to_string(n));
      r.vertex_images.emplace(NerveVertex{v.id, n}, NerveVertex{chosen->id, n});
    }
  }
  return r;
}

Complex<std::string> unindexed_delta(const CoverSequence& cs, Kappa kappa) {
  const int k = kappa.resolve(cs.level_count());
  // Distinct point sets, keyed by their working-level core.
  std::map<std::vector<char>, int> set_of_mask;
  std::vector<std::string> names;
  std::vector<int> set_of_element(static_cast<std::size_t>(cs.level_offset(k)));
  for (int e = 0; e < cs.level_offset(k); ++e) {
    auto [it, fresh] = set_of_mask.emplace(cs.core_mask(e), static_cast<int>(names.size()));
    if (fresh) {
      names.push_back(cs.flat_vertex(e).element);
    } else {
      auto& name = names[static_cast<std::size_t>(it->second)];
      name = std::min(name, cs.flat_vertex(e).element);
    }
    set_of_element[static_cast<std::size_t>(e)] = it->second;
  }
  // Which point sets occur in each level.
  std::vector<std::set<int>> level_sets(static_cast<std::size_t>(k));
  for (int e = 0; e < cs.level_offset(k); ++e)
    level_sets[static_cast<std::size_t>(cs.flat_vertex(e).level)].insert(set_of_element[static_cast<std::size_t>(e)]);

  ComplexBuilder<std::string> b;
  const auto& index = *cs.working_stage().index;
  for (int s : index.maximal) {
    std::set<int> present;
    for (int e : prefix_row(cs.membership()[static_cast<std::size_t>(s)], cs.level_offset(k)))
      present.insert(set_of_element[static_cast<std::size_t>(e)]);
    const std::vector<int> sets(present.begin(), present.end());
    if (sets.size() > 30) throw Error(Errc::invalid_cover, "too many overlapping elements for unindexed_delta");
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << sets.size()); ++mask) {
      bool ok = true;
      for (const auto& in_level : level_sets) {
        int count = 0;
        for (std::size_t i = 0; i < sets.size(); ++i)
          if ((mask >> i & 1U) && in_level.count(sets[i])) ++count;
        if (count > 1) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      Simplex<std::string> simplex;
      for (std::size_t i = 0; i < sets.size(); ++i)
        if (mask >> i & 1U) simplex.push_back(names[static_cast<std::size_t>(sets[i])]);
      b.add(make_simplex(std::move(simplex)));
    }
  }
  return std::move(b).build();
}

CoverSequence as_cover_sequence(const CRefinement& r) {
  return CoverSequence::make(r.source.space(), r.families);
}

}  // namespace nervelab
