// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Every randomized suite uses a fixed seed.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <regex>
#include <sstream>
#include <string>
#include <type_traits>

#include <filesystem>

#include "nervelab/dimension.hpp"
#include "nervelab/fixtures.hpp"
#include "support.hpp"

using namespace nervelab;
using testing::Rng;

static_assert(!std::is_floating_point_v<Rational>, "coordinates must be exact");
static_assert(std::numeric_limits<Rational>::is_exact, "coordinates must be exact");

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

const SimplicialComplex& pick_base(int i) {
  static const SimplicialComplex bases[] = {fixtures::edge(), fixtures::triangle(), fixtures::triangle_boundary()};
  return bases[i % 3];
}

Outcome delta_equals_nerve_suite() {
  Rng rng(1001);
  int instances = 0;
  int mismatches = 0;
  while (instances < 240) {
    const auto cs = testing::random_disjoint_sequence(rng, pick_base(instances), testing::uniform(rng, 0, 2),
                                                      testing::uniform(rng, 1, 4));
    const auto kappa = Kappa::finite(testing::uniform(rng, 1, cs.level_count()));
    if (delta_subcomplex(cs, kappa).complex != nerve(cs, kappa).complex) ++mismatches;
    ++instances;
  }
  return {mismatches == 0, std::to_string(instances) + " sequences, " + std::to_string(mismatches) + " mismatches"};
}

Outcome cone_monotone_suite() {
  Rng rng(1002);
  int instances = 0;
  long checks = 0;
  int violations = 0;
  while (instances < 220) {
    const auto cs = testing::random_sequence(rng, pick_base(instances), testing::uniform(rng, 0, 2),
                                             testing::uniform(rng, 2, 4));
    for (const auto& tau : cs.working_stage().complex.simplices()) {
      for (int n = 0; n + 1 < cs.level_count(); ++n) {
        const auto lower = delta_at_carrier(cs, Kappa::finite(n + 1), tau);
        const auto upper = delta_at_carrier(cs, Kappa::finite(n + 2), tau);
        for (const auto& u : upper.vertices()) {
          if (u.level != n + 1) continue;
          ++checks;
          if (!join_apex(lower, u).subcomplex_of(upper)) ++violations;
        }
      }
    }
    ++instances;
  }
  return {violations == 0 && checks > 0, std::to_string(instances) + " sequences, " + std::to_string(checks) +
                                             " cone inclusions, " + std::to_string(violations) + " violations"};
}

Outcome remark_suite() {
  const auto rem = fixtures::remark_cover();
  const bool indexed = delta_subcomplex(rem, Kappa::finite(2)).complex.subcomplex_of(
      delta_subcomplex(rem, Kappa::finite(3)).complex);
  const auto u1 = unindexed_delta(rem, Kappa::finite(2));
  const auto u2 = unindexed_delta(rem, Kappa::finite(3));
  const Simplex<std::string> pq{"P", "Q"};
  std::string witness = "none";
  for (const auto& s : u1.simplices())
    if (!u2.contains(s)) {
      witness = "{" + s.front();
      for (std::size_t i = 1; i < s.size(); ++i) witness += "," + s[i];
      witness += "}";
      break;
    }
  const bool violated = u1.contains(pq) && !u2.contains(pq) && witness == "{P,Q}";
  return {indexed && violated,
          std::string("indexed inclusion ") + (indexed ? "holds" : "fails") + ", unindexed witness " + witness};
}

Outcome canonical_iff_selection_suite() {
  Rng rng(1004);
  int maps = 0;
  int corrupted = 0;
  int canonical = 0;
  int disagreements = 0;
  while (maps < 600) {
    const auto cs = testing::random_sequence(rng, pick_base(maps), testing::uniform(rng, 0, 1),
                                             testing::uniform(rng, 1, 3));
    const auto kappa = Kappa::finite(testing::uniform(rng, 1, cs.level_count()));
    if (!cs.prefix_covers(kappa.value())) continue;
    const int level = cs.working_level() + testing::uniform(rng, 0, 1);
    auto f = build_canonical(cs, kappa, TargetKind::nerve, level);
    if (testing::coin(rng, 60)) {
      const auto names = testing::stage_vertices(cs.space(), level);
      for (int k = testing::uniform(rng, 1, 3); k > 0; --k) {
        const auto& v = names[static_cast<std::size_t>(testing::uniform(rng, 0, static_cast<int>(names.size()) - 1))];
        f.map.vertex_images[v] = cs.flat_vertex(testing::uniform(rng, 0, cs.level_offset(kappa.value()) - 1));
      }
      ++corrupted;
    }
    const bool c = is_canonical(f, cs, kappa);
    if (c != is_selection(f, cs, kappa)) ++disagreements;
    canonical += c ? 1 : 0;
    ++maps;
  }
  return {disagreements == 0 && canonical > 0 && canonical < maps,
          std::to_string(maps) + " maps (" + std::to_string(corrupted) + " corrupted, " + std::to_string(canonical) +
              " canonical), " + std::to_string(disagreements) + " disagreements"};
}

bool round_trip(const CoverSequence& cs, int n) {
  const auto r = ostrand_refine(cs, n);
  if (!verify_c_refinement(r).ok) return false;
  const auto kappa = Kappa::finite(n + 1);
  const auto fine = as_cover_sequence(r);
  const auto h = build_canonical(fine, kappa, TargetKind::delta);
  const auto f = transfer_selection(h, refinement_map(fine, r.source, kappa));
  if (!check_simplicial_map(f.map) || !is_canonical(f, r.source, kappa) || !is_selection(f, r.source, kappa))
    return false;
  return verify_c_refinement(extract_c_refinement(f, r.source, kappa)).ok;
}

Outcome round_trip_suite() {
  const auto stars = fixtures::star_cover(fixtures::triangle(), 3);
  const bool fixture = ostrand_refine(stars, 2).kappa() == 3 && round_trip(stars, 2);
  Rng rng(1005);
  int passed = 0;
  const int total = 60;
  PolyhedralSpace space(fixtures::triangle());
  for (int i = 0; i < total; ++i) {
    std::vector<Family> levels;
    for (int n = 0; n < 3; ++n)
      levels.push_back(testing::random_covering_family(rng, space, testing::uniform(rng, 0, 1), testing::uniform(rng, 1, 4),
                                                       "U" + std::to_string(n) + "_"));
    if (round_trip(CoverSequence::make(space, std::move(levels)), 2)) ++passed;
  }
  return {fixture && passed == total, std::string("star-covered triangle ") + (fixture ? "ok" : "failed") + ", " +
                                          std::to_string(passed) + "/" + std::to_string(total) + " random triples"};
}

Outcome separation_suite() {
  const auto stars = fixtures::star_cover(fixtures::triangle(), 3);
  const auto two = search_c_refinement(stars, 2, 2);
  bool audit_ok = !two.found() && two.audit.size() == 2;
  std::string audit;
  for (const auto& a : two.audit) {
    audit_ok = audit_ok && a.exhausted && a.stats.attempts == a.stats.accepted + a.stats.pruned &&
               a.stats.attempts == 2 * (1 + a.stats.accepted - a.stats.leaves);
    audit += " L" + std::to_string(a.level) + ":" + std::to_string(a.stats.attempts) + " trials";
  }
  const auto three = search_c_refinement(stars, 3, 2);
  const auto ostrand = ostrand_refine(stars, 2);
  bool shape = three.found() && three.refinement->kappa() == 3;
  for (std::size_t k = 0; shape && k < 3; ++k) {
    const auto& a = three.refinement->families[k];
    const auto& b = ostrand.families[k];
    shape = a.size() == b.size();
    for (std::size_t i = 0; shape && i < a.size(); ++i) shape = a[i].set == b[i].set;
  }
  const auto edge = search_c_refinement(fixtures::star_cover(fixtures::edge(), 2), 2, 2);
  const bool edge_ok = edge.found() && edge.level == 1 && verify_c_refinement(*edge.refinement).ok;
  return {audit_ok && shape && edge_ok,
          std::string("triangle kappa=2 exhausted") + audit + "; kappa=3 " + (shape ? "matches" : "differs from") +
              " barycenter families; edge kappa=2 " + (edge_ok ? "found at level 1" : "not found at level 1")};
}

Outcome cone_extension_suite() {
  Rng rng(1007);
  int instances = 0;
  int failures = 0;
  for (; instances < 120; ++instances) {
    // Domain: random complex of dimension <= n on up to five vertices.
    const int n = testing::uniform(rng, 0, 2);
    std::vector<Simplex<VertexId>> gens;
    for (int g = testing::uniform(rng, 1, 3); g > 0; --g) {
      Simplex<VertexId> s;
      for (const char* v : {"a", "b", "c", "d", "e"})
        if (static_cast<int>(s.size()) <= n && testing::coin(rng, 45)) s.push_back(v);
      if (s.empty()) s.push_back("a");
      gens.push_back(s);
    }
    const auto sigma = SimplicialComplex::closure_of(gens);
    Simplex<VertexId> all{"q"};
    const int ys = testing::uniform(rng, 1, 4);
    for (int i = 0; i < ys; ++i) all.push_back("y" + std::to_string(i));
    const auto target = SimplicialComplex::closure_of({make_simplex(all)});
    SimplicialMap<VertexId, VertexId> g{sigma, target, {}};
    for (const auto& v : sigma.vertices()) g.vertex_images.emplace(v, "y" + std::to_string(testing::uniform(rng, 0, ys - 1)));

    // Chain with the cone witness built in, plus random extra simplices.
    std::vector<SimplicialComplex> chain;
    for (int k = 0; k <= n + 1; ++k) {
      ComplexBuilder<VertexId> b;
      b.add({"q"});
      if (k > 0) b.add_all(join_apex(chain.back(), VertexId("q")));
      for (const auto& s : sigma.simplices())
        if (static_cast<int>(s.size()) - 1 <= k) b.add(g.image(s));
      for (const auto& s : target.simplices())
        if (static_cast<int>(s.size()) - 1 <= k && testing::coin(rng, 15)) b.add(s);
      chain.push_back(std::move(b).build());
    }
    const auto h = cone_extend(g, "v", "q", chain);
    bool ok = check_skeleton_images(h, chain).ok && h.image(VertexId("v")) == "q";
    for (const auto& [v, y] : g.vertex_images) ok = ok && h.image(v) == y;
    // Independent restatement: each k-simplex of Σ∗v lands in S_k.
    for (const auto& s : h.source.simplices()) ok = ok && chain[s.size() - 1].contains(h.image(s));

    auto longer = chain;
    longer.push_back(join_apex(chain.back(), VertexId("q")));
    const auto h2 = cone_extend(h, "w", "q", longer);
    ok = ok && check_skeleton_images(h2, longer).ok;
    for (const auto& s : h2.source.simplices()) ok = ok && longer[s.size() - 1].contains(h2.image(s));
    for (const auto& [v, y] : h.vertex_images) ok = ok && h2.image(v) == y;
    if (!ok) ++failures;
  }
  return {failures == 0, std::to_string(instances) + " instances extended twice, " + std::to_string(failures) + " failures"};
}

/// Random carrier-monotone table: the value at tau is the union of random
/// pieces attached to the faces of tau.
CarrierMappingSequence random_tables(Rng& rng, const SimplicialComplex& base, int level) {
  PolyhedralSpace space(base);
  const auto target = SimplicialComplex::closure_of({{"y0", "y1", "y2", "y3"}});
  const auto targets = std::vector<Simplex<VertexId>>(target.simplices().begin(), target.simplices().end());
  std::map<Simplex<VertexId>, SimplicialComplex> piece;
  const auto& stage = space.stage(level).complex;
  for (const auto& tau : stage.simplices()) {
    std::vector<Simplex<VertexId>> chosen;
    for (int i = testing::uniform(rng, tau.size() == 1 ? 1 : 0, 2); i > 0; --i)
      chosen.push_back(targets[static_cast<std::size_t>(testing::uniform(rng, 0, static_cast<int>(targets.size()) - 1))]);
    piece[tau] = chosen.empty() ? SimplicialComplex() : SimplicialComplex::closure_of(chosen);
  }
  CarrierMappingSequence::Table table;
  for (const auto& tau : stage.simplices()) {
    ComplexBuilder<VertexId> b;
    for (const auto& [face, value] : piece)
      if (is_face_of(face, tau)) b.add_all(value);
    table.emplace(tau, std::move(b).build());
  }
  return CarrierMappingSequence::make(space, level, target, {table}, std::nullopt);
}

Outcome skeletal_suite() {
  Rng rng(1008);
  int vertex_checks = 0;
  int vertex_failures = 0;
  for (int i = 0; i < 60; ++i) {
    const auto phi = random_tables(rng, pick_base(i), testing::uniform(rng, 0, 1));
    ++vertex_checks;
    if (!check_vertex_selection(vertex_selection(phi), phi).ok) ++vertex_failures;
  }
  int steps = 0;
  int step_failures = 0;
  for (const auto& base : {fixtures::edge(), fixtures::triangle()}) {
    const auto phi = fixtures::skeletal_tables(base, 4);
    const auto s = vertex_selection(phi);
    if (!check_vertex_selection(s, phi).ok) ++vertex_failures;
    auto f = lift_to_delta(s, phi);
    for (int step = 0; step <= 3; ++step) {
      if (step > 0) f = extend_skeletal_selection(f, phi);
      ++steps;
      if (!check_skeletal_selection(f, phi).ok || !check_union_selection(f, phi).ok) ++step_failures;
    }
  }
  return {vertex_failures == 0 && step_failures == 0,
          std::to_string(vertex_checks) + " random vertex selections + 2 fixtures, " + std::to_string(steps) +
              " skeletal steps (edge, triangle), " + std::to_string(vertex_failures + step_failures) + " failures"};
}

Outcome exactness_audit() {
  const std::filesystem::path root = NERVELAB_SOURCE_DIR;
  const std::regex floating("\\b(float|double|long double)\\b");
  int files = 0;
  std::string hits;
  for (const char* dir : {"include", "src", "tools"}) {
    for (const auto& entry : std::filesystem::recursive_directory_iterator(root / dir)) {
      const auto ext = entry.path().extension().string();
      if (ext != ".hpp" && ext != ".cpp" && ext != ".h") continue;
      ++files;
      std::ifstream in(entry.path());
      std::string line;
      int number = 0;
      while (std::getline(in, line)) {
        ++number;
        if (std::regex_search(line, floating))
          hits += " " + entry.path().filename().string() + ":" + std::to_string(number);
      }
    }
  }
  // The exact type must survive arithmetic that binary floating point cannot.
  const Rational third(1, 3);
  const bool exact = third + third + third == Rational(1) && Rational(1, 10) * 3 == Rational(3, 10);
  return {files > 0 && hits.empty() && exact,
          std::to_string(files) + " source files scanned, floating-point tokens:" + (hits.empty() ? " none" : hits)};
}

}  // namespace

int main() {
  struct Criterion {
    int number;
    const char* name;
    double budget_seconds;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {1, "delta equals nerve on pairwise-disjoint levels", 5.0, delta_equals_nerve_suite},
      {2, "delta over a carrier grows by coning with the next level", 0.0, cone_monotone_suite},
      {3, "indexed prefixes nest, unindexed prefixes fail on {P,Q}", 0.0, remark_suite},
      {4, "canonical map iff selection", 0.0, canonical_iff_selection_suite},
      {5, "C-refinement / canonical map round trip", 30.0, round_trip_suite},
      {6, "dimension separation by bounded search", 60.0, separation_suite},
      {7, "cone extension keeps k-skeleta in S_k", 0.0, cone_extension_suite},
      {8, "vertex and skeletal selections", 0.0, skeletal_suite},
      {9, "exact arithmetic only", 0.0, exactness_audit},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.budget_seconds == 0.0 || seconds < c.budget_seconds;
    const bool ok = out.ok && in_time;
    failed += ok ? 0 : 1;
    std::printf("[%s] criterion %d: %s -- %s (%.2fs%s)\n", ok ? "PASS" : "FAIL", c.number, c.name,
                out.detail.c_str(), seconds,
                c.budget_seconds > 0.0 ? (in_time ? ", within budget" : ", OVER BUDGET") : "");
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed, std::size(criteria));
  return failed == 0 ? 0 : 1;
}
