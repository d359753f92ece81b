#pragma once

// Canonical maps into nerves, selection predicates, cone extension and
// skeletal selections for carrier-monotone mapping tables.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nervelab/complex.hpp"
#include "nervelab/cover.hpp"
#include "nervelab/subdivision.hpp"

namespace nervelab {

/// A simplicial map from the stage-`subdivision_level` complex of the space
/// into an indexed nerve (or its Δ-subcomplex).
struct CanonicalMap {
  int subdivision_level = 0;
  SimplicialMap<VertexId, NerveVertex> map;
};

/// Outcome of a predicate. On failure `check` names the violated condition
/// and `witness` lists the objects that violate it.
struct Verdict {
  bool ok = true;
  std::string check;
  std::vector<std::string> witness;

  static Verdict pass() { return {}; }
  static Verdict fail(std::string check, std::vector<std::string> witness) {
    return {false, std::move(check), std::move(witness)};
  }
  explicit operator bool() const { return ok; }
};

/// Every vertex-star preimage f⁻¹(st⟨(U,n)⟩) lies inside U.
Verdict check_canonical(const CanonicalMap& f, const CoverSequence& cs, Kappa kappa);
/// Every source simplex meets the core of every element in its image.
Verdict check_selection(const CanonicalMap& f, const CoverSequence& cs, Kappa kappa);
/// Same predicate through the serial sweep (reference for tests and benchmarks).
Verdict check_selection_serial(const CanonicalMap& f, const CoverSequence& cs, Kappa kappa);

inline bool is_canonical(const CanonicalMap& f, const CoverSequence& cs, Kappa kappa) {
  return check_canonical(f, cs, kappa).ok;
}
inline bool is_selection(const CanonicalMap& f, const CoverSequence& cs, Kappa kappa) {
  return check_selection(f, cs, kappa).ok;
}

enum class TargetKind { nerve, delta };

/// Sends each stage vertex v to the smallest (level, id) element whose
/// star-set contains st(v). `level` defaults to the working level.
CanonicalMap build_canonical(const CoverSequence& cs, Kappa kappa, TargetKind kind,
                             std::optional<int> level = std::nullopt);

/// r ∘ h.
CanonicalMap transfer_selection(const CanonicalMap& h, const SimplicialMap<NerveVertex, NerveVertex>& r);

/// Families of preimage star-sets, one family per level of the prefix.
CRefinement extract_c_refinement(const CanonicalMap& f, const CoverSequence& cs, Kappa kappa);

/// Extends g over the cone Σ∗v by v ↦ q. `chain` is S_0 ⊆ … ⊆ S_{n+1} inside
/// g.target, with dim Σ ≤ n, g(σ) ∈ S_{dim σ}, q ∈ S_0 and S_k ∗ q ⊆ S_{k+1}.
SimplicialMap<VertexId, VertexId> cone_extend(const SimplicialMap<VertexId, VertexId>& g, const VertexId& v,
                                              const VertexId& q, const std::vector<SimplicialComplex>& chain);

/// k-skeleton images inside S_k, simplex by simplex.
Verdict check_skeleton_images(const SimplicialMap<VertexId, VertexId>& h, const std::vector<SimplicialComplex>& chain);

/// Set-valued maps φ_k given on the simplices of one subdivision stage:
/// a point whose stage carrier is tau is sent to the subcomplex tables[k][tau].
class CarrierMappingSequence {
 public:
  using Table = std::map<Simplex<VertexId>, SimplicialComplex>;

  /// Checks every table is total, nonempty, inside the target and
  /// carrier-monotone, and the cone witness (if any) holds.
  static CarrierMappingSequence make(PolyhedralSpace space, int level, SimplicialComplex target,
                                     std::vector<Table> tables, std::optional<VertexId> cone_witness);

  const PolyhedralSpace& space() const { return space_; }
  int level() const { return level_; }
  const SimplicialComplex& target() const { return target_; }
  const std::vector<Table>& tables() const { return tables_; }
  int table_count() const { return static_cast<int>(tables_.size()); }
  const std::optional<VertexId>& cone_witness() const { return cone_witness_; }

  /// φ_k on the open simplex tau given at `from_level` ≥ level().
  const SimplicialComplex& value(int k, const Simplex<VertexId>& tau, int from_level) const;

 private:
  CarrierMappingSequence() = default;
  PolyhedralSpace space_{SimplicialComplex::closure_of({{"a"}})};
  int level_ = 0;
  SimplicialComplex target_;
  std::vector<Table> tables_;
  std::optional<VertexId> cone_witness_;
};

/// A map from Δ(ℱ_{≤n}) into the target, with ℱ = cs.
struct SkeletalSelection {
  CoverSequence cs;
  SimplicialMap<NerveVertex, VertexId> map;
};

struct VertexSelection {
  Family cover;                          // st(v) for every stage vertex, id = v
  std::map<std::string, VertexId> image; // element id -> vertex of the target
};

VertexSelection vertex_selection(const CarrierMappingSequence& phi);

/// f(F) ∈ φ_0(x) for every x ∈ F ∈ cover.
Verdict check_vertex_selection(const VertexSelection& s, const CarrierMappingSequence& phi);

/// The vertex selection as a map on Δ⁰ of its one-level cover sequence.
SkeletalSelection lift_to_delta(const VertexSelection& s, const CarrierMappingSequence& phi);

/// For every σ ∈ Δ(ℱ_{≤n}) of dimension k and every stage simplex meeting all
/// elements of σ, f(σ) ∈ φ_k there.
Verdict check_skeletal_selection(const SkeletalSelection& f, const CarrierMappingSequence& phi);
/// Same with φ_n for every σ: the image of the whole Δ(ℱ_{≤n}) over a point
/// stays inside φ_n of that point.
Verdict check_union_selection(const SkeletalSelection& f, const CarrierMappingSequence& phi);

inline bool is_skeletal_selection(const SkeletalSelection& f, const CarrierMappingSequence& phi) {
  return check_skeletal_selection(f, phi).ok;
}

/// Appends the star cover of the working stage as level n+1 and sends its
/// vertices to the cone witness.
SkeletalSelection extend_skeletal_selection(const SkeletalSelection& f, const CarrierMappingSequence& phi);

}  // namespace nervelab
