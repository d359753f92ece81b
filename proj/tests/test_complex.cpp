#include <doctest.h>

#include "nervelab/complex.hpp"
#include "support.hpp"

using namespace nervelab;
using testing::Rng;

namespace {

SimplicialComplex full_simplex(int n) {
  Simplex<VertexId> s;
  for (int i = 0; i < n; ++i) s.push_back("v" + std::to_string(i));
  return SimplicialComplex::closure_of({s});
}

std::size_t binomial(std::size_t n, std::size_t k) {
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Every nonempty subset of the vertex set, tested against the complex.
std::size_t count_by_enumeration(const SimplicialComplex& c, const std::vector<Simplex<VertexId>>& generators) {
  const std::vector<VertexId> vs(c.vertices().begin(), c.vertices().end());
  std::size_t count = 0;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << vs.size()); ++mask) {
    Simplex<VertexId> s;
    for (std::size_t i = 0; i < vs.size(); ++i)
      if (mask >> i & 1U) s.push_back(vs[i]);
    const bool face = std::any_of(generators.begin(), generators.end(), [&](const auto& g) { return is_face_of(s, g); });
    CHECK(c.contains(s) == face);
    count += face ? 1 : 0;
  }
  return count;
}

}  // namespace

TEST_CASE("closure of a full simplex has binomial f-vector") {
  for (int n = 1; n <= 6; ++n) {
    const auto c = full_simplex(n);
    CHECK(c.size() == (std::size_t{1} << n) - 1);
    CHECK(c.dim() == n - 1);
    const auto f = c.f_vector();
    for (int k = 0; k < n; ++k) CHECK(f[static_cast<std::size_t>(k)] == binomial(static_cast<std::size_t>(n), static_cast<std::size_t>(k + 1)));
  }
}

TEST_CASE("closure matches subset enumeration on random generators") {
  Rng rng(11);
  for (int round = 0; round < 60; ++round) {
    const int n = testing::uniform(rng, 1, 7);
    std::vector<Simplex<VertexId>> gens;
    for (int g = testing::uniform(rng, 1, 4); g > 0; --g) {
      Simplex<VertexId> s;
      for (int i = 0; i < n; ++i)
        if (testing::coin(rng, 50)) s.push_back("v" + std::to_string(i));
      if (s.empty()) s.push_back("v0");
      gens.push_back(s);
    }
    const auto c = SimplicialComplex::closure_of(gens);
    CHECK(count_by_enumeration(c, gens) == c.size());
    for (const auto& m : c.maximal_simplices())
      CHECK(std::any_of(gens.begin(), gens.end(), [&](const auto& g) { return g == m; }));
  }
}

TEST_CASE("closure rejects empty input") {
  CHECK_THROWS_AS(SimplicialComplex::closure_of({}), Error);
  CHECK_THROWS_AS(SimplicialComplex::closure_of({{}}), Error);
}

TEST_CASE("skeleton keeps exactly the small simplices") {
  const auto c = full_simplex(5);
  for (int k = -1; k <= 5; ++k) {
    const auto s = skeleton(c, k);
    for (const auto& x : c.simplices()) CHECK(s.contains(x) == (static_cast<int>(x.size()) <= k + 1));
    CHECK(s.subcomplex_of(c));
  }
}

TEST_CASE("cone doubles the simplex count plus one") {
  Rng rng(5);
  for (int round = 0; round < 30; ++round) {
    std::vector<Simplex<VertexId>> gens;
    for (int g = testing::uniform(rng, 1, 3); g > 0; --g) {
      Simplex<VertexId> s;
      for (const char* v : {"a", "b", "c", "d", "e"})
        if (testing::coin(rng, 50)) s.push_back(v);
      if (s.empty()) s.push_back("a");
      gens.push_back(s);
    }
    const auto c = SimplicialComplex::closure_of(gens);
    const auto coned = cone(c, "w");
    CHECK(coned.size() == 2 * c.size() + 1);
    CHECK(coned.dim() == c.dim() + 1);
    CHECK(delete_vertex(coned, "w") == c);
  }
  CHECK_THROWS_AS(cone(full_simplex(2), "v0"), Error);
  const auto j = join_apex(full_simplex(2), "v0");
  CHECK(j == full_simplex(2));
}

TEST_CASE("simplicial map checks and composition") {
  const auto edge = SimplicialComplex::closure_of({{"a", "b"}});
  const auto point = SimplicialComplex::closure_of({{"p"}});
  const auto two_points = SimplicialComplex::closure_of({{"p"}, {"q"}});
  SimplicialMap<VertexId, VertexId> collapse{edge, point, {{"a", "p"}, {"b", "p"}}};
  CHECK(check_simplicial_map(collapse));
  SimplicialMap<VertexId, VertexId> tear{edge, two_points, {{"a", "p"}, {"b", "q"}}};
  CHECK_FALSE(check_simplicial_map(tear));
  SimplicialMap<VertexId, VertexId> partial{edge, point, {{"a", "p"}}};
  CHECK_THROWS_AS(check_simplicial_map(partial), Error);

  SimplicialMap<VertexId, VertexId> id{point, point, {{"p", "p"}}};
  const auto composed = compose(id, collapse);
  CHECK(composed.vertex_images == collapse.vertex_images);
  SimplicialMap<VertexId, VertexId> other{two_points, point, {{"q", "p"}}};
  CHECK_THROWS_AS(compose(other, collapse), Error);
}
