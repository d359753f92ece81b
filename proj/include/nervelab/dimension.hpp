#pragma once

// C-refinements: verification, the Ostrand barycenter construction, bounded
// exhaustive search, and the round trip through canonical maps.

#include <optional>
#include <string>
#include <vector>

#include "nervelab/cover.hpp"
#include "nervelab/kernels.hpp"
#include "nervelab/selection.hpp"

namespace nervelab {

/// Pairwise disjointness per family, family n refining source level n, and
/// joint coverage; the first violation is the witness.
Verdict verify_c_refinement(const CRefinement& r);

/// Families of barycenter stars grouped by the dimension of the subdivided
/// simplex, one subdivision below the Lebesgue level. kappa = n+1.
CRefinement ostrand_refine(const CoverSequence& cs, int n, int max_level = 8);

struct LevelAudit {
  int level = 0;
  int vertices = 0;
  kernels::SearchStats stats;
  bool exhausted = false;
};

struct SearchResult {
  std::optional<CRefinement> refinement;
  int level = -1;                 // level of the certificate, or the last level searched
  std::vector<LevelAudit> audit;  // one entry per level searched, in order

  bool found() const { return refinement.has_value(); }
};

enum class SearchBackend { parallel, serial };

/// Tries the stage levels working_level+1 … max_level in order (only the
/// working level when max_level ≤ working_level). Families are unions of
/// vertex stars of one stage.
SearchResult search_c_refinement(const CoverSequence& cs, int kappa, int max_level,
                                 SearchBackend backend = SearchBackend::parallel);

/// The colouring instance searched at `level`, with its vertex order.
struct SearchInstance {
  kernels::ColoringProblem problem;
  std::vector<VertexId> order;
};
SearchInstance search_instance(const CoverSequence& cs, int kappa, int level);

int dim_oracle(const PolyhedralSpace& space);

struct MuMode {
  enum class Kind { omega_plus_one, omega, n_plus_one };
  Kind kind = Kind::omega_plus_one;
  int n = 0;

  static MuMode parse(const std::string& text);
  std::string name() const;
};

struct MuReport {
  std::string mode;
  int dim = 0;
  int kappa = 0;
  std::string method;  // "ostrand" or "search"
  bool success = false;
  std::optional<CRefinement> refinement;
  std::vector<LevelAudit> audit;
  int max_level = 0;
  std::optional<CanonicalMap> canonical;
  std::vector<std::pair<std::string, bool>> checks;
  std::optional<CRefinement> extracted;
};

MuReport mu_driver(const CoverSequence& cs, const MuMode& mode, int max_level);

}  // namespace nervelab
