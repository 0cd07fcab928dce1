#pragma once

#include "mbfd/graph.hpp"

#include <vector>

namespace mbfd {

struct MatchingResult {
    std::vector<int> edge_ids;  // a maximum matching, one id per matched pair
    std::vector<int> mate;      // per vertex: matched partner, -1 if exposed
    std::vector<int> mate_edge; // per vertex: matching edge id, -1 if exposed
    int size() const { return static_cast<int>(edge_ids.size()); }
};

/// Maximum-cardinality matching on a general (multi)graph, Edmonds' blossom
/// search. Deterministic: scans vertices and adjacency in index order.
MatchingResult max_matching(const MultiGraph& g);

} // namespace mbfd
