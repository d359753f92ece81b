#pragma once

// JSON and DOT interchange. Readers report schema problems as
// Errc::schema_error with a JSON path, e.g. "$.levels[1][0].stars: ...".

#include <string>

#include <json.hpp>

#include "nervelab/cover.hpp"
#include "nervelab/dimension.hpp"
#include "nervelab/selection.hpp"

namespace nervelab::io {

using Json = nlohmann::ordered_json;

inline constexpr int schema_version = 1;

Json parse(const std::string& text);

SimplicialComplex complex_from_json(const Json& j, const std::string& path = "$");
Json complex_to_json(const SimplicialComplex& c);

BarycentricPoint point_from_json(const Json& j, const std::string& path = "$");
Json point_to_json(const BarycentricPoint& p);

StarSet star_set_from_json(const Json& j, int default_level, const std::string& path = "$");
Json star_set_to_json(const StarSet& s);

CoverSequence cover_from_json(const Json& j, const std::string& path = "$");
Json cover_to_json(const CoverSequence& cs);

Json nerve_to_json(const NerveComplex& c);
Json named_complex_to_json(const Complex<std::string>& c);

/// Reads a canonical map relative to `cs`; the target is rebuilt from the
/// "target" ("nerve" or "delta") and "kappa" fields.
CanonicalMap canonical_from_json(const Json& j, const CoverSequence& cs, const std::string& path = "$");
Json canonical_to_json(const CanonicalMap& f, int kappa, TargetKind kind);

CRefinement crefinement_from_json(const Json& j, const CoverSequence& source, const std::string& path = "$");
Json crefinement_to_json(const CRefinement& r);

CarrierMappingSequence mapping_from_json(const Json& j, const std::string& path = "$");
Json mapping_to_json(const CarrierMappingSequence& phi);

struct ConeExtendInput {
  SimplicialMap<VertexId, VertexId> g;
  VertexId apex;
  VertexId witness;
  std::vector<SimplicialComplex> chain;
};
ConeExtendInput cone_input_from_json(const Json& j, const std::string& path = "$");
Json simplicial_map_to_json(const SimplicialMap<VertexId, VertexId>& m);

Json verdict_to_json(const Verdict& v);
Json audit_to_json(const std::vector<LevelAudit>& audit);
Json search_to_json(const SearchResult& r, int kappa, int max_level);
Json mu_report_to_json(const MuReport& r);
Json skeletal_to_json(const SkeletalSelection& s);
Json vertex_selection_to_json(const VertexSelection& s);

/// DOT of the 1-skeleton, labelled with the f-vector.
std::string complex_to_dot(const SimplicialComplex& c, const std::string& name);
std::string nerve_to_dot(const NerveComplex& c, const std::string& name);

/// Adds "schema_version" as the first key and serializes with a fixed indent.
std::string dump(Json j);

}  // namespace nervelab::io
