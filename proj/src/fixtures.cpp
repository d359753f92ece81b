#include "nervelab/fixtures.hpp"

namespace nervelab::fixtures {

SimplicialComplex edge() { return SimplicialComplex::closure_of({{"a", "b"}}); }

SimplicialComplex triangle() { return SimplicialComplex::closure_of({{"a", "b", "c"}}); }

SimplicialComplex triangle_boundary() { return SimplicialComplex::closure_of({{"a", "b"}, {"a", "c"}, {"b", "c"}}); }

CoverSequence remark_cover() {
  const CoverElement p{"P", StarSet{1, {"{a}", "{a,b}"}}};
  const CoverElement q{"Q", StarSet{1, {"{a,b}", "{b}"}}};
  const CoverElement p1{"P'", StarSet{1, {"{a}"}}};
  const CoverElement q1{"Q'", StarSet{1, {"{b}"}}};
  return CoverSequence::make(PolyhedralSpace(edge()), {{p, q1}, {p1, q}, {p, q}}, 1);
}

CoverSequence star_cover(const SimplicialComplex& base, int levels) {
  Family stars;
  for (const auto& v : base.vertices()) stars.push_back({v, StarSet{0, {v}}});
  return CoverSequence::make(PolyhedralSpace(base), std::vector<Family>(static_cast<std::size_t>(levels), stars));
}

CoverSequence whole_cover(const SimplicialComplex& base, int levels) {
  const Family whole{{"X", StarSet{0, base.vertices()}}};
  return CoverSequence::make(PolyhedralSpace(base), std::vector<Family>(static_cast<std::size_t>(levels), whole));
}

CarrierMappingSequence skeletal_tables(const SimplicialComplex& base, int tables) {
  const VertexId z = "z";
  Simplex<VertexId> all{z};
  for (const auto& v : base.vertices()) all.push_back("y_" + v);
  auto target = SimplicialComplex::closure_of({all});

  std::vector<CarrierMappingSequence::Table> out(static_cast<std::size_t>(tables));
  for (const auto& tau : base.simplices()) {
    Simplex<VertexId> span{z};
    for (const auto& v : tau) span.push_back("y_" + v);
    const auto full = SimplicialComplex::closure_of({span});
    for (int k = 0; k < tables; ++k) out[static_cast<std::size_t>(k)].emplace(tau, skeleton(full, k));
  }
  return CarrierMappingSequence::make(PolyhedralSpace(base), 0, std::move(target), std::move(out), z);
}

}  // namespace nervelab::fixtures
