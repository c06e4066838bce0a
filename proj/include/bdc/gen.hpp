#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bdc/graph.hpp"

namespace bdc::gen {

// Deterministic graph families. Kinds: path, cycle, grid (near-square),
// gnm (random connected, about 3n edges), clique.
CommGraph make_graph(const std::string& kind, int n, uint64_t seed);

// Seeded initial labelling: bit labels uniform in {0,1}, weight labels
// uniform in [1, n^3] (distinct enough that ties stay rare).
Labelling make_labelling(const CommGraph& g, LabelKind kind, uint64_t seed);

// `count` batches of exactly `alpha` distinct changed edges each, generated
// against the evolving labelling so no change is a no-op. Kinds: flip (bit
// toggle), weight (fresh uniform weight). `l` is advanced in place.
std::vector<BatchUpdate> make_batches(Labelling& l, const std::string& kind, int alpha, int count,
                                      uint64_t seed);

}  // namespace bdc::gen
