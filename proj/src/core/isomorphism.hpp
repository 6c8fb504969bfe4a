#pragma once

#include <optional>
#include <vector>

#include "core/graph.hpp"

namespace exg {

// Exact graph isomorphism on structure alone (weights and events ignored),
// exhaustive backtracking pruned by degree and neighbor-degree profiles.
// mapping[u] is the vertex of g2 matched to vertex u of g1.
std::optional<std::vector<int>> find_isomorphism(const ExclusivityGraph& g1,
                                                 const ExclusivityGraph& g2);

bool are_isomorphic(const ExclusivityGraph& g1, const ExclusivityGraph& g2);

} // namespace exg
