#pragma once

#include "mbfd/chains.hpp"
#include "mbfd/decomposition.hpp"
#include "mbfd/graph.hpp"
#include "mbfd/sggf.hpp"

#include <optional>
#include <vector>

namespace mbfd {

/// The degree-constrained matching instance derived from a graph: one left
/// node per high-degree vertex, one right node per chain, one edge per
/// (chain, high-degree endpoint) slot. A cycle through a high-degree vertex
/// contributes two parallel edges.
struct MbsfdReduction {
    SggfInstance instance;
    ChainFamily family;
    std::vector<ChainProfile> profiles;          // per chain
    std::vector<VertexId> x_of;                  // per X-side node: original vertex
    std::vector<std::pair<int, int>> edge_slot;  // per H-edge: (chain index, slot)
};

/// Requires k unbounded or >= 2, and max degree <= k+1 (the caller rules out
/// higher degrees first).
MbsfdReduction build_sggf_instance(const Graph& g, KBound k);

/// Turns a feasible subset of the reduction's edges into a full labeling:
/// selected slots become matching end-edges, everything else is filled from
/// the recorded witness of the realized boundary pattern.
Decomposition lift_solution(const Graph& g, const MbsfdReduction& red,
                            const std::vector<int>& selected, KBound k);

enum class MbsfdMethod : std::uint8_t {
    DegreeShortCircuit, // a vertex of degree >= k+2 forces a no
    MatchingPair,       // k = 1: decomposition into two matchings
    Pipeline,           // chain profiles + degree-constrained matching
};

struct MbsfdResult {
    std::optional<Decomposition> decomposition;
    MbsfdMethod method = MbsfdMethod::Pipeline;
    bool yes() const { return decomposition.has_value(); }
};

/// Decides matching + k-bounded star forest decomposability and produces a
/// validating certificate on yes-instances. Total: never errors.
MbsfdResult solve_mbsfd(const Graph& g, KBound k);

} // namespace mbfd
