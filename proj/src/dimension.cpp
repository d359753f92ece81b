#include "nervelab/dimension.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <set>

namespace nervelab {

Verdict verify_c_refinement(const CRefinement& r) {
  const auto& space = r.source.space();
  if (r.kappa() > r.source.level_count())
    return Verdict::fail("family-count", {std::to_string(r.kappa()), std::to_string(r.source.level_count())});

  for (std::size_t n = 0; n < r.families.size(); ++n) {
    const auto& family = r.families[n];
    const auto& level = r.source.levels()[n];
    for (const auto& v : family) {
      const bool inside = std::any_of(level.begin(), level.end(),
                                      [&](const CoverElement& u) { return star_subset(space, v.set, u.set); });
      if (!inside)
        return Verdict::fail("family-refines-level", {to_string(NerveVertex{v.id, static_cast<int>(n)})});
    }
    for (std::size_t i = 0; i < family.size(); ++i)
      for (std::size_t j = i + 1; j < family.size(); ++j)
        if (star_relation(space, family[i].set, family[j].set) != StarRelation::disjoint)
          return Verdict::fail("family-pairwise-disjoint", {to_string(NerveVertex{family[i].id, static_cast<int>(n)}),
                                                            to_string(NerveVertex{family[j].id, static_cast<int>(n)})});
  }

  int level = r.source.working_level();
  for (const auto& family : r.families)
    for (const auto& v : family) level = std::max(level, v.set.level);
  const auto& index = *space.stage(level).index;
  std::vector<char> covered(index.names.size(), 0);
  for (const auto& family : r.families) {
    for (const auto& v : family) {
      const auto mask = core_mask_at(space, v.set, level);
      for (std::size_t i = 0; i < mask.size(); ++i) covered[i] |= mask[i];
    }
  }
  for (std::size_t i = 0; i < covered.size(); ++i)
    if (!covered[i]) return Verdict::fail("families-cover", {simplex_token({index.names[i]}), std::to_string(level)});
  return Verdict::pass();
}

CRefinement ostrand_refine(const CoverSequence& cs, int n, int max_level) {
  const int d = cs.space().dim();
  if (n < d)
    throw Error(Errc::dimension_too_low,
                "the barycenter construction needs n >= dim = " + std::to_string(d) + ", got " + std::to_string(n));
  auto source = cs.padded(n + 1);
  for (int k = 0; k <= n; ++k)
    if (!source.level_covers(k))
      throw Error(Errc::no_coverage, "[covers] level " + std::to_string(k) + " does not cover the space");

  // Lebesgue level: every vertex star inside an element of every level.
  int m = source.working_level();
  while (true) {
    const auto fine = source.refined_to(m);
    bool lebesgue = true;
    for (int k = 0; k <= n && lebesgue; ++k) lebesgue = fine.level_covers(k);
    if (lebesgue) break;
    if (++m + 1 > max_level) throw Error(Errc::level_budget_exceeded, "no Lebesgue level within the budget");
  }
  if (m + 1 > max_level)
    throw Error(Errc::level_budget_exceeded, "the construction needs level " + std::to_string(m + 1));

  CRefinement r{std::vector<Family>(static_cast<std::size_t>(n + 1)), source};
  for (const auto& sigma : cs.space().stage(m).complex.simplices()) {
    const auto b = simplex_token(sigma);
    r.families[sigma.size() - 1].push_back({b, StarSet{m + 1, {b}}});
  }
  for (auto& family : r.families)
    std::sort(family.begin(), family.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  return r;
}

SearchInstance search_instance(const CoverSequence& cs, int kappa, int level) {
  if (kappa < 1) throw Error(Errc::empty_prefix, "[kappa>0] kappa must be positive");
  const auto source = cs.padded(kappa);
  const auto& space = source.space();
  const auto& stage = space.stage(level);
  const auto& index = *stage.index;

  SearchInstance inst;
  inst.order = index.names;
  if (level > 0) {
    std::stable_sort(inst.order.begin(), inst.order.end(), [&](const VertexId& a, const VertexId& b) {
      return stage.carrier_of_vertex.at(a).size() < stage.carrier_of_vertex.at(b).size();
    });
  }
  std::vector<int> position(index.names.size());
  for (std::size_t i = 0; i < inst.order.size(); ++i)
    position[static_cast<std::size_t>(index.vertex(inst.order[i]))] = static_cast<int>(i);

  auto& p = inst.problem;
  p.families = kappa;
  p.neighbors.resize(index.names.size());
  p.allowed.assign(index.names.size(), std::vector<std::uint64_t>(static_cast<std::size_t>(kappa), 0));
  for (std::size_t v = 0; v < index.names.size(); ++v) {
    auto& row = p.neighbors[static_cast<std::size_t>(position[v])];
    for (int u : index.neighbors[v]) row.push_back(position[static_cast<std::size_t>(u)]);
    std::sort(row.begin(), row.end());
  }
  for (int k = 0; k < kappa; ++k) {
    const auto& family = source.levels()[static_cast<std::size_t>(k)];
    if (family.size() > 64)
      throw Error(Errc::invalid_cover, "the search supports at most 64 elements per level, level " +
                                           std::to_string(k) + " has " + std::to_string(family.size()));
    for (std::size_t j = 0; j < family.size(); ++j) {
      const auto mask = core_mask_at(space, family[j].set, level);
      for (std::size_t v = 0; v < mask.size(); ++v)
        if (mask[v])
          p.allowed[static_cast<std::size_t>(position[v])][static_cast<std::size_t>(k)] |= std::uint64_t{1} << j;
    }
  }
  return inst;
}

namespace {

CRefinement certificate(const CoverSequence& source, const SearchInstance& inst, const std::vector<int>& colour,
                        int level) {
  const auto& p = inst.problem;
  CRefinement r{std::vector<Family>(static_cast<std::size_t>(p.families)), source};
  std::vector<char> seen(colour.size(), 0);
  for (std::size_t start = 0; start < colour.size(); ++start) {
    if (seen[start]) continue;
    const int k = colour[start];
    std::set<VertexId> core;
    std::vector<int> stack{static_cast<int>(start)};
    seen[start] = 1;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      core.insert(inst.order[static_cast<std::size_t>(v)]);
      for (int u : p.neighbors[static_cast<std::size_t>(v)]) {
        if (seen[static_cast<std::size_t>(u)] || colour[static_cast<std::size_t>(u)] != k) continue;
        seen[static_cast<std::size_t>(u)] = 1;
        stack.push_back(u);
      }
    }
    const auto id = *core.begin();
    r.families[static_cast<std::size_t>(k)].push_back({id, StarSet{level, std::move(core)}});
  }
  for (auto& family : r.families)
    std::sort(family.begin(), family.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  return r;
}

}  // namespace

SearchResult search_c_refinement(const CoverSequence& cs, int kappa, int max_level, SearchBackend backend) {
  const int first = max_level <= cs.working_level() ? cs.working_level() : cs.working_level() + 1;
  const int last = std::max(first, max_level);
  SearchResult result;
  for (int level = first; level <= last; ++level) {
    const auto inst = search_instance(cs, kappa, level);
    const auto outcome = backend == SearchBackend::parallel ? kernels::search_parallel(inst.problem)
                                                            : kernels::search_serial(inst.problem);
    result.audit.push_back({level, static_cast<int>(inst.order.size()), outcome.stats, !outcome.found});
    result.level = level;
    if (outcome.found) {
      result.refinement = certificate(cs.padded(kappa), inst, outcome.family_of_vertex, level);
      break;
    }
  }
  return result;
}

int dim_oracle(const PolyhedralSpace& space) { return space.base().dim(); }

MuMode MuMode::parse(const std::string& text) {
  if (text == "c") return {Kind::omega_plus_one, 0};
  if (text == "finite-c") return {Kind::omega, 0};
  if (text.rfind("dim:", 0) == 0) {
    int n = -1;
    const char* begin = text.data() + 4;
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(begin, end, n);
    if (ec == std::errc() && ptr == end && begin != end && n >= 0) return {Kind::n_plus_one, n};
  }
  throw Error(Errc::schema_error, "mode must be c, finite-c or dim:<n> with n >= 0, got '" + text + "'");
}

std::string MuMode::name() const {
  switch (kind) {
    case Kind::omega_plus_one:
      return "c";
    case Kind::omega:
      return "finite-c";
    case Kind::n_plus_one:
      break;
  }
  return "dim:" + std::to_string(n);
}

MuReport mu_driver(const CoverSequence& cs, const MuMode& mode, int max_level) {
  MuReport report;
  report.mode = mode.name();
  report.dim = dim_oracle(cs.space());
  report.max_level = max_level;
  const int n = mode.kind == MuMode::Kind::n_plus_one ? mode.n : report.dim;
  report.kappa = n + 1;

  if (n >= report.dim) {
    report.method = "ostrand";
    report.refinement = ostrand_refine(cs, n, std::max(max_level, cs.working_level() + 1));
  } else {
    report.method = "search";
    auto found = search_c_refinement(cs, report.kappa, max_level);
    report.audit = std::move(found.audit);
    if (!found.found()) return report;
    report.refinement = std::move(found.refinement);
  }

  const auto& r = *report.refinement;
  const auto kappa = Kappa::finite(report.kappa);
  report.checks.emplace_back("c-refinement-verified", verify_c_refinement(r).ok);

  const auto fine = as_cover_sequence(r);
  const auto h = build_canonical(fine, kappa, TargetKind::delta);
  const auto& coarse = r.source;
  const auto refine = refinement_map(fine, coarse, kappa);
  auto f = transfer_selection(h, refine);
  report.checks.emplace_back("canonical-map-simplicial-into-delta", check_simplicial_map(f.map));
  const bool canonical = is_canonical(f, coarse, kappa);
  report.checks.emplace_back("canonical-map-is-canonical", canonical);
  report.checks.emplace_back("canonical-map-is-selection", is_selection(f, coarse, kappa));
  if (canonical) {
    report.extracted = extract_c_refinement(f, coarse, kappa);
    report.checks.emplace_back("extracted-c-refinement-verified", verify_c_refinement(*report.extracted).ok);
  }
  report.canonical = std::move(f);

  report.success = std::all_of(report.checks.begin(), report.checks.end(), [](const auto& c) { return c.second; });
  return report;
}

}  // namespace nervelab
