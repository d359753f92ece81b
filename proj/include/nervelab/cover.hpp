#pragma once

// Indexed sequences of star-set covers, kernels, nerves and the
// one-vertex-per-level Δ-subcomplex.

#include <compare>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nervelab/complex.hpp"
#include "nervelab/kernels.hpp"
#include "nervelab/realization.hpp"
#include "nervelab/subdivision.hpp"

namespace nervelab {

/// A vertex of an indexed nerve: cover element `element` of level `level`.
/// The level is part of the identity, so equal sets at different levels are
/// different vertices. Ordered by (level, element).
struct NerveVertex {
  std::string element;
  int level = 0;

  friend bool operator==(const NerveVertex&, const NerveVertex&) = default;
  friend std::strong_ordering operator<=>(const NerveVertex& a, const NerveVertex& b) {
    if (auto c = a.level <=> b.level; c != 0) return c;
    return a.element.compare(b.element) <=> 0;
  }
};

std::string to_string(const NerveVertex& v);

using NerveComplex = Complex<NerveVertex>;

struct CoverElement {
  std::string id;
  StarSet set;
};

using Family = std::vector<CoverElement>;

/// Prefix length κ of a cover sequence; ω means "all levels".
class Kappa {
 public:
  static Kappa omega() { return Kappa(-1); }
  static Kappa finite(int k) { return Kappa(k); }

  bool is_omega() const { return value_ < 0; }
  int value() const { return value_; }
  /// Number of levels taken from a sequence of `levels` levels.
  int resolve(int levels) const;

 private:
  explicit Kappa(int v) : value_(v) {}
  int value_;
};

class CoverSequence {
 public:
  /// Normalizes every star-set to a common working level (the maximum of the
  /// element levels and `working_level`), sorts each family by id and checks
  /// unique ids, nonempty cores and joint coverage.
  static CoverSequence make(PolyhedralSpace space, std::vector<Family> levels,
                            std::optional<int> working_level = std::nullopt);

  const PolyhedralSpace& space() const { return data_->space; }
  int working_level() const { return data_->working_level; }
  const SubdivisionStage& working_stage() const { return space().stage(working_level()); }
  const std::vector<Family>& levels() const { return data_->levels; }
  int level_count() const { return static_cast<int>(data_->levels.size()); }

  /// Elements are numbered level-major, by id within a level.
  int element_count() const { return static_cast<int>(data_->flat.size()); }
  /// First flat index of level n (n may equal level_count()).
  int level_offset(int n) const { return data_->offsets[static_cast<std::size_t>(n)]; }
  const NerveVertex& flat_vertex(int i) const { return data_->flat[static_cast<std::size_t>(i)]; }
  int flat_index(const NerveVertex& v) const;
  const CoverElement& element(const NerveVertex& v) const;
  const std::vector<char>& core_mask(int i) const { return data_->core_masks[static_cast<std::size_t>(i)]; }
  const kernels::MembershipTable& membership() const { return data_->meets; }

  bool level_covers(int n) const;
  bool covers_each_level() const;
  /// Union of the first `kappa` levels covers the space.
  bool prefix_covers(int kappa) const;
  bool level_pairwise_disjoint(int n) const;

  /// Same sets, working stage moved to a finer level.
  CoverSequence refined_to(int level) const;
  /// Repeats the last level until there are `count` levels.
  CoverSequence padded(int count) const;
  CoverSequence with_level(Family family) const;

 private:
  struct Data {
    PolyhedralSpace space;
    int working_level = 0;
    std::vector<Family> levels;
    std::vector<int> offsets;
    std::vector<NerveVertex> flat;
    std::vector<std::vector<char>> core_masks;
    kernels::MembershipTable meets;
  };
  explicit CoverSequence(std::shared_ptr<const Data> d) : data_(std::move(d)) {}
  std::shared_ptr<const Data> data_;
};

struct IndexedNerve {
  enum class Kind { full_nerve, delta };
  NerveComplex complex;
  Kind kind = Kind::full_nerve;
};

/// A working-stage simplex meeting every element of sigma, if any.
std::optional<Simplex<VertexId>> kernel_query(const CoverSequence& cs, const Simplex<NerveVertex>& sigma);

IndexedNerve nerve(const CoverSequence& cs, Kappa kappa);
IndexedNerve delta_subcomplex(const CoverSequence& cs, Kappa kappa);

/// Δ_[U_<κ](p) for every p whose working-stage carrier is tau.
NerveComplex delta_at_carrier(const CoverSequence& cs, Kappa kappa, const Simplex<VertexId>& tau);
/// Same without the one-vertex-per-level restriction.
NerveComplex nerve_at_carrier(const CoverSequence& cs, Kappa kappa, const Simplex<VertexId>& tau);

/// Level-preserving map choosing, for each fine element, the smallest-id
/// coarse element of the same level containing it.
SimplicialMap<NerveVertex, NerveVertex> refinement_map(const CoverSequence& fine, const CoverSequence& coarse,
                                                       Kappa kappa);

/// Δ built on the unindexed union of the levels: equal point sets from
/// different levels collapse to one vertex, named by their smallest id.
Complex<std::string> unindexed_delta(const CoverSequence& cs, Kappa kappa);

/// A candidate C-refinement of `source`: pairwise-disjoint families, family
/// n refining source level n, jointly covering.
struct CRefinement {
  std::vector<Family> families;
  CoverSequence source;

  int kappa() const { return static_cast<int>(families.size()); }
};

/// The families as a cover sequence of their own (joint coverage only).
CoverSequence as_cover_sequence(const CRefinement& r);

}  // namespace nervelab
