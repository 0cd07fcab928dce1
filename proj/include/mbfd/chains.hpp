#pragma once

#include "mbfd/decomposition.hpp"
#include "mbfd/graph.hpp"

#include <map>
#include <optional>
#include <set>
#include <vector>

namespace mbfd {

enum class ChainKind : std::uint8_t { Path, Cycle };

/// Endpoint class of a path chain: a vertex of degree >= 3, or a leaf
/// (degree 1). Interior chain vertices always have degree 2.
enum class EndClass : std::uint8_t { HighDegree, Leaf };

struct Chain {
    ChainKind kind = ChainKind::Path;
    // Path: vertices v0..vL (L edges). Cycle: v0..v_{L-1} with the closing
    // edge back to v0; v0 is the unique high-degree vertex when anchored.
    std::vector<VertexId> vertices;
    std::vector<int> edge_ids; // edge i joins vertices[i] and vertices[i+1 mod]
    EndClass end_a = EndClass::Leaf; // class of vertices.front() (Path)
    EndClass end_b = EndClass::Leaf; // class of vertices.back()  (Path)
    bool anchored = false;           // Cycle: passes through one high-degree vertex

    int length() const { return static_cast<int>(edge_ids.size()); }
    /// Number of matchable end slots at high-degree vertices (0..2).
    int slot_count() const;
    /// Edge id of slot 0 / 1.
    int slot_edge(int slot) const;
    /// The high-degree vertex a slot sits at.
    VertexId slot_vertex(int slot) const;
};

struct ChainFamily {
    std::vector<Chain> chains;
    std::vector<VertexId> high_degree; // degree >= 3, ascending
    std::vector<int> edge_chain;       // per edge id: owning chain index
};

/// Partitions the edge set into maximal paths through degree-2 vertices
/// (endpoints of degree != 2) and cycles containing at most one vertex of
/// degree >= 3.
ChainFamily chain_decompose(const Graph& g);

/// State of one end slot in a boundary pattern.
enum class SlotState : std::uint8_t { InMatching, InForest };

using BoundaryPattern = std::vector<SlotState>; // one entry per slot

struct ChainProfile {
    // How many slot edges can simultaneously lie in the matching.
    std::set<int> achievable;
    // One full edge labeling per feasible boundary pattern (labels aligned
    // with chain.edge_ids).
    std::map<BoundaryPattern, std::vector<EdgeLabel>> witnesses;
};

/// Allowed matched-slot counts of a chain inside a matching + k-bounded star
/// forest decomposition, with a witness interior labeling per feasible
/// boundary pattern. Independent of k for every k >= 2 (interior star
/// components never exceed two edges); requires k >= 2 or unbounded.
ChainProfile chain_profile(const Chain& chain, KBound k);

} // namespace mbfd
