#include "nervelab/subdivision.hpp"

#include <algorithm>
#include <numeric>

namespace nervelab {

std::string simplex_token(const Simplex<VertexId>& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i != 0) out += ',';
    out += s[i];
  }
  out += '}';
  return out;
}

void validate_base_vertex_ids(const SimplicialComplex& c) {
  for (const auto& v : c.vertices()) {
    if (v.empty()) throw Error(Errc::invalid_complex, "[vertex-id] empty vertex id");
    if (v.find_first_of(",{}") != std::string::npos)
      throw Error(Errc::invalid_complex, "[vertex-id] vertex id '" + v + "' contains one of ',{}'");
  }
}

int StageIndex::vertex(const VertexId& v) const {
  auto it = vertex_index.find(v);
  return it == vertex_index.end() ? -1 : it->second;
}

int StageIndex::find_simplex(const Simplex<VertexId>& s) const {
  std::vector<int> ids;
  ids.reserve(s.size());
  for (const auto& v : s) {
    int i = vertex(v);
    if (i < 0) return -1;
    ids.push_back(i);
  }
  std::sort(ids.begin(), ids.end());
  auto it = simplex_lookup.find(ids);
  return it == simplex_lookup.end() ? -1 : it->second;
}

Simplex<VertexId> StageIndex::simplex_names(int simplex) const {
  Simplex<VertexId> out;
  for (int v : simplices[static_cast<std::size_t>(simplex)]) out.push_back(names[static_cast<std::size_t>(v)]);
  return out;
}

StageIndex build_index(const SimplicialComplex& c) {
  StageIndex idx;
  idx.names.assign(c.vertices().begin(), c.vertices().end());
  for (std::size_t i = 0; i < idx.names.size(); ++i) idx.vertex_index.emplace(idx.names[i], static_cast<int>(i));
  idx.simplices_containing.resize(idx.names.size());
  idx.neighbors.resize(idx.names.size());

  for (const auto& s : c.simplices()) {
    std::vector<int> ids;
    ids.reserve(s.size());
    for (const auto& v : s) ids.push_back(idx.vertex_index.at(v));
    // Names are sorted and indices follow name order, so ids is sorted.
    const int si = static_cast<int>(idx.simplices.size());
    for (int v : ids) idx.simplices_containing[static_cast<std::size_t>(v)].push_back(si);
    if (ids.size() == 2) {
      idx.neighbors[static_cast<std::size_t>(ids[0])].push_back(ids[1]);
      idx.neighbors[static_cast<std::size_t>(ids[1])].push_back(ids[0]);
    }
    idx.simplex_lookup.emplace(ids, si);
    idx.simplices.push_back(std::move(ids));
  }
  for (auto& n : idx.neighbors) std::sort(n.begin(), n.end());

  for (const auto& s : c.maximal_simplices()) idx.maximal.push_back(idx.find_simplex(s));
  return idx;
}

SubdivisionStage initial_stage(const SimplicialComplex& base) {
  validate_base_vertex_ids(base);
  SubdivisionStage st;
  st.level = 0;
  st.complex = base;
  st.index = std::make_shared<const StageIndex>(build_index(base));
  return st;
}

SubdivisionStage subdivide(const SubdivisionStage& stage) {
  SubdivisionStage next;
  next.level = stage.level + 1;
  for (const auto& s : stage.complex.simplices()) next.carrier_of_vertex.emplace(simplex_token(s), s);

  // Every chain of faces is a face of a full flag of some maximal simplex,
  // so closing the full flags yields all chains.
  ComplexBuilder<VertexId> b;
  for (const auto& top : stage.complex.maximal_simplices()) {
    std::vector<std::size_t> order(top.size());
    std::iota(order.begin(), order.end(), 0);
    do {
      Simplex<VertexId> flag;
      Simplex<VertexId> prefix;
      for (std::size_t i : order) {
        prefix.push_back(top[i]);
        flag.push_back(simplex_token(make_simplex(prefix)));
      }
      b.add(make_simplex(std::move(flag)));
    } while (std::next_permutation(order.begin(), order.end()));
  }
  next.complex = std::move(b).build();
  next.index = std::make_shared<const StageIndex>(build_index(next.complex));
  return next;
}

PolyhedralSpace::PolyhedralSpace(SimplicialComplex base) : cache_(std::make_shared<Cache>()) {
  if (base.empty()) throw Error(Errc::invalid_complex, "[nonempty] the ground complex is empty");
  cache_->stages.push_back(initial_stage(base));
}

const SubdivisionStage& PolyhedralSpace::stage(int level) const {
  if (level < 0) throw Error(Errc::level_mismatch, "negative subdivision level");
  std::lock_guard<std::mutex> lock(cache_->mutex);
  while (static_cast<int>(cache_->stages.size()) <= level) cache_->stages.push_back(subdivide(cache_->stages.back()));
  // deque::push_back keeps references to existing elements valid.
  return cache_->stages[static_cast<std::size_t>(level)];
}

Simplex<VertexId> PolyhedralSpace::coarse_carrier(const Simplex<VertexId>& tau, int from_level, int to_level) const {
  if (to_level > from_level) throw Error(Errc::cannot_coarsen, "coarse carrier requested at a finer level");
  Simplex<VertexId> current = tau;
  for (int level = from_level; level > to_level; --level) {
    const auto& st = stage(level);
    if (!st.complex.contains(current))
      throw Error(Errc::unknown_carrier, simplex_token(current) + " is not a simplex at level " + std::to_string(level));
    // A chain's open simplex sits inside the open top element of the chain.
    Simplex<VertexId> top;
    for (const auto& v : current) {
      const auto& c = st.carrier_of_vertex.at(v);
      if (c.size() > top.size()) top = c;
    }
    current = top;
  }
  return current;
}

}  // namespace nervelab
