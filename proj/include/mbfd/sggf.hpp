#pragma once

#include "mbfd/graph.hpp"
#include "mbfd/matching.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mbfd {

/// Sorted, duplicate-free set of allowed degrees.
using GapSet = std::vector<int>;

GapSet make_gap_set(std::vector<int> members);

/// True iff every integer i between min and max satisfies i ∈ A or i+1 ∈ A
/// (equivalently: no two consecutive integers in the span are both missing).
bool is_small_gap(const GapSet& a);

bool gap_set_contains(const GapSet& a, int x);

/// A multigraph with one allowed-degree set per vertex. A solution is an
/// edge subset S with d_S(v) ∈ A_v for every v; infeasibility is a valid
/// outcome (sets may exceed the vertex degree).
struct SggfInstance {
    MultiGraph graph;
    std::vector<GapSet> sets;
};

/// Instance file: graph-format lines (duplicate `e` lines allowed, each is a
/// distinct parallel edge) followed by one `a <v> <i1> <i2> ...` line per
/// vertex.
SggfInstance parse_sggf_instance(const std::string& text);
std::string serialize_sggf_instance(const SggfInstance& inst);

/// Exhaustive oracle over all 2^|E| subsets; requires <= 25 edges. Returns
/// the feasible subset with the lowest edge-id bitmask (deterministic).
std::optional<std::vector<int>> solve_sggf_oracle(const SggfInstance& inst);

/// One alternative of a vertex gadget. Node ids: stubs 0..stubs-1, then
/// `required` internal nodes, then `optional_nodes` internal nodes. For an
/// outward stub set T (the incidences counted by d_S), the piece is feasible
/// iff some matching of the piece minus T covers every remaining stub and
/// every required node; optional nodes may stay exposed. For a piece without
/// optional nodes this is exactly "the gadget minus T has a perfect
/// matching".
struct GadgetPiece {
    int stubs = 0;
    int required = 0;
    int optional_nodes = 0;
    std::vector<Edge> edges;
    GapSet realizes; // outward counts this piece admits

    int node_count() const { return stubs + required + optional_nodes; }
};

/// Gadget catalog for one vertex: the union of the pieces' feasible outward
/// counts is exactly the target set. Intervals and single-parity
/// progressions compile to one piece; other small-gap sets get one piece per
/// maximal run.
struct VertexGadget {
    int degree = 0;
    GapSet target;
    std::vector<GadgetPiece> pieces;
};

/// Requires A small-gap, nonempty, with members in [0, degree].
VertexGadget build_vertex_gadget(int degree, const GapSet& a);

/// Exhaustive stub-subset validation: for every piece and every T ⊆ stubs,
/// piece feasibility must equal |T| ∈ piece.realizes, and the union of the
/// pieces' sets must equal the target. Independent of the blossom engine.
bool validate_vertex_gadget(const VertexGadget& g, std::string* why = nullptr);

/// Polynomial-route solver: per-vertex gadgets, one stub pair per edge, and a
/// perfect-matching search (blossom engine on a doubled graph that absorbs
/// the optional nodes). Vertices whose set splits into several pieces are
/// branched over. The returned subset is post-checked against every A_v.
std::optional<std::vector<int>> solve_sggf(const SggfInstance& inst);

} // namespace mbfd
