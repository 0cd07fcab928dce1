#pragma once

#include "mbfd/decomposition.hpp"
#include "mbfd/exact_solver.hpp"
#include "mbfd/graph.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mbfd {

enum class GadgetKind : std::uint8_t { MForcer, FForcer, Or, Rejector, Variable };

std::string gadget_kind_name(GadgetKind k);
std::optional<GadgetKind> gadget_kind_from_name(const std::string& name);

/// A gadget graph with its designated (named) vertices and edges.
///
/// Pin vertex names by kind:
///   m_forcer / f_forcer : v
///   or                  : p1 p2 o
///   rejector            : n_prime n o          (o is the inner endpoint of e_prime)
///   variable            : p1 p2 n n_prime o
/// Pin edge names by kind:
///   m_forcer / f_forcer : e
///   or                  : e1 e2 f
///   rejector            : e_prime e
///   variable            : e1 e2 e e_prime
struct PinnedGadget {
    GadgetKind kind;
    int k = 0;
    int ell = 0; // f_forcer only
    Graph graph;
    std::map<std::string, VertexId> vertex_pins;
    std::map<std::string, Edge> edge_pins;

    int pin_vertex(const std::string& name) const { return vertex_pins.at(name); }
    Edge pin_edge(const std::string& name) const { return edge_pins.at(name); }
    int pin_edge_id(const std::string& name) const {
        const Edge& e = edge_pins.at(name);
        return *graph.edge_id(e.lo(), e.hi());
    }
};

/// Deterministic construction of the gadget graphs. k >= 3; ell is required
/// for FForcer (1 <= ell <= k) and must be absent otherwise.
PinnedGadget build_gadget(GadgetKind kind, int k, std::optional<int> ell = std::nullopt);

enum class VerifyStatus : std::uint8_t { Pass, Fail, SizeCap };

struct GadgetReport {
    VerifyStatus status = VerifyStatus::Pass;
    std::string failing_clause; // machine-readable clause id on Fail
    // Counterexample decomposition for universally-quantified clauses.
    std::optional<Decomposition> witness;
    // Missing boundary pattern for existentially-quantified clauses
    // (labels aligned with the kind's pin-edge list).
    std::string missing_pattern;
    std::uint64_t decomposition_count = 0;
    // OR gadget: distinct labelings of (e1, e2, f), canonical order.
    std::vector<std::vector<EdgeLabel>> core_labelings;
    // SizeCap details.
    std::size_t edge_count = 0;
    std::size_t cap = 0;

    bool passed() const { return status == VerifyStatus::Pass; }
};

/// Exhaustively enumerates all decompositions of the gadget graph and checks
/// the defining clauses of its kind. Never weakens a clause: if the graph is
/// above the search cap the report says so instead of passing.
GadgetReport verify_gadget(const PinnedGadget& g, const SearchLimits& limits = {});

/// JSON pin sidecar: {"kind":...,"k":...,"pins":{name:index,...}}.
std::string serialize_pins(const PinnedGadget& g);

} // namespace mbfd
