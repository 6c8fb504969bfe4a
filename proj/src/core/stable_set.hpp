#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/graph.hpp"

namespace exg {

struct StableSetResult {
    double value = 0.0;
    std::vector<int> vertices;          // one optimal stable set, ascending
    std::uint64_t nodes_expanded = 0;
    std::string bound = "greedy-clique-cover";
};

// Exact maximum-weight stable set by branch and bound. The upper bound at
// each node is a greedy clique cover of the candidate set (a stable set picks
// at most one vertex per clique, so the sum of per-clique maxima bounds the
// remaining weight).
StableSetResult max_stable_set(const ExclusivityGraph& g);

} // namespace exg
