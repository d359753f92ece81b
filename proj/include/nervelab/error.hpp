#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nervelab {

enum class Errc {
  invalid_complex,
  vertex_clash,
  incomplete_map,
  invalid_point,
  level_mismatch,
  cannot_coarsen,
  invalid_cover,
  unknown_cover_element,
  empty_prefix,
  prefix_too_long,
  unknown_carrier,
  not_a_refinement,
  no_coverage,
  level_budget_exceeded,
  compose_error,
  not_canonical,
  not_pairwise_disjoint,
  witness_failure,
  skeleton_violation,
  empty_value,
  not_carrier_monotone,
  arity_error,
  no_cone_witness,
  dimension_too_low,
  schema_error,
};

constexpr std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::invalid_complex: return "InvalidComplex";
    case Errc::vertex_clash: return "VertexClash";
    case Errc::incomplete_map: return "IncompleteMap";
    case Errc::invalid_point: return "InvalidPoint";
    case Errc::level_mismatch: return "LevelMismatch";
    case Errc::cannot_coarsen: return "CannotCoarsen";
    case Errc::invalid_cover: return "InvalidCover";
    case Errc::unknown_cover_element: return "UnknownCoverElement";
    case Errc::empty_prefix: return "EmptyPrefix";
    case Errc::prefix_too_long: return "PrefixTooLong";
    case Errc::unknown_carrier: return "UnknownCarrier";
    case Errc::not_a_refinement: return "NotARefinement";
    case Errc::no_coverage: return "NoCoverage";
    case Errc::level_budget_exceeded: return "LevelBudgetExceeded";
    case Errc::compose_error: return "ComposeError";
    case Errc::not_canonical: return "NotCanonical";
    case Errc::not_pairwise_disjoint: return "NotPairwiseDisjoint";
    case Errc::witness_failure: return "WitnessFailure";
    case Errc::skeleton_violation: return "SkeletonViolation";
    case Errc::empty_value: return "EmptyValue";
    case Errc::not_carrier_monotone: return "NotCarrierMonotone";
    case Errc::arity_error: return "ArityError";
    case Errc::no_cone_witness: return "NoConeWitness";
    case Errc::dimension_too_low: return "DimensionTooLow";
    case Errc::schema_error: return "SchemaError";
  }
  return "Unknown";
}

/// Library error. The message is prefixed with the error name so that
/// callers printing `what()` always see which contract was broken.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace nervelab
