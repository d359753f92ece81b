#pragma once

// Small named inputs shared by the self-test, the unit tests and the
// acceptance suite.

#include "nervelab/cover.hpp"
#include "nervelab/selection.hpp"

namespace nervelab::fixtures {

SimplicialComplex edge();               // {a,b}
SimplicialComplex triangle();           // {a,b,c}
SimplicialComplex triangle_boundary();  // the three edges of {a,b,c}

/// Cover sequence on the edge at level 1 (vertices {a}, {a,b}, {b}) with
/// P = st{a} ∪ st{a,b}, Q = st{a,b} ∪ st{b}, P' = st{a}, Q' = st{b} and levels
/// {P, Q'}, {P', Q}, {P, Q}.
CoverSequence remark_cover();

/// `levels` copies of the vertex-star cover {st(v)} of a base complex.
CoverSequence star_cover(const SimplicialComplex& base, int levels);

/// `levels` copies of the one-element cover by the whole space.
CoverSequence whole_cover(const SimplicialComplex& base, int levels);

/// Mapping tables on the base stage into the full simplex on {y_v} ∪ {z}:
/// table_k(tau) is the k-skeleton of the full simplex on {y_v : v ∈ tau} ∪ {z},
/// with cone witness z.
CarrierMappingSequence skeletal_tables(const SimplicialComplex& base, int tables);

}  // namespace nervelab::fixtures
