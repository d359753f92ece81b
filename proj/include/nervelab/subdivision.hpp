#pragma once

#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "nervelab/complex.hpp"

namespace nervelab {

using SimplicialComplex = Complex<VertexId>;

/// Canonical name of a simplex, "{v1,v2,...}" in vertex order. Stage m+1
/// names its vertices by the tokens of the stage-m simplices they subdivide.
std::string simplex_token(const Simplex<VertexId>& s);

/// Rejects vertex ids that would make subdivision tokens ambiguous.
void validate_base_vertex_ids(const SimplicialComplex& c);

/// Integer view of a stage used by the kernels. Vertex indices follow the
/// lexicographic order of vertex names; simplex indices follow the order of
/// `Complex::simplices()`.
struct StageIndex {
  std::vector<VertexId> names;
  std::unordered_map<VertexId, int> vertex_index;
  std::vector<std::vector<int>> simplices;
  std::map<std::vector<int>, int> simplex_lookup;
  std::vector<std::vector<int>> simplices_containing;  // per vertex
  std::vector<std::vector<int>> neighbors;             // 1-skeleton adjacency
  std::vector<int> maximal;                            // simplex indices

  int vertex(const VertexId& v) const;
  /// -1 when `s` is not a simplex of the stage.
  int find_simplex(const Simplex<VertexId>& s) const;
  Simplex<VertexId> simplex_names(int simplex) const;
};

StageIndex build_index(const SimplicialComplex& c);

/// One barycentric subdivision stage.
struct SubdivisionStage {
  int level = 0;
  SimplicialComplex complex;
  /// Level-m vertex -> level-(m-1) simplex it is the barycenter of (empty at level 0).
  std::map<VertexId, Simplex<VertexId>> carrier_of_vertex;
  std::shared_ptr<const StageIndex> index;
};

SubdivisionStage initial_stage(const SimplicialComplex& base);
SubdivisionStage subdivide(const SubdivisionStage& stage);

/// The ground space |K| with its subdivision stages computed on demand.
/// Copies share the stage cache; stages are deterministic so sharing is
/// invisible to callers.
class PolyhedralSpace {
 public:
  explicit PolyhedralSpace(SimplicialComplex base);

  const SimplicialComplex& base() const { return cache_->stages.front().complex; }
  const SubdivisionStage& stage(int level) const;
  int dim() const { return base().dim(); }

  /// Carrier at `to_level` of the open simplex <tau> given at `from_level`.
  Simplex<VertexId> coarse_carrier(const Simplex<VertexId>& tau, int from_level, int to_level) const;

  friend bool operator==(const PolyhedralSpace& a, const PolyhedralSpace& b) {
    return a.cache_ == b.cache_ || a.base() == b.base();
  }

 private:
  struct Cache {
    std::mutex mutex;
    std::deque<SubdivisionStage> stages;
  };
  std::shared_ptr<Cache> cache_;
};

}  // namespace nervelab
