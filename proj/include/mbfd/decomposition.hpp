#pragma once

#include "mbfd/graph.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace mbfd {

enum class EdgeLabel : std::uint8_t { Forest, Matching };

enum class SpecKind : std::uint8_t { Linear, Star };

/// Decomposition target.
///   Linear: edges split into a k-bounded linear forest (Forest label) and an
///           l-bounded linear forest (Matching label); l = 1 is the matching case.
///   Star:   edges split into a k-bounded star forest (Forest) and a matching.
struct DecompSpec {
    SpecKind kind = SpecKind::Linear;
    KBound k = KBound::finite(1);
    KBound l = KBound::finite(1);

    static DecompSpec linear(KBound k, KBound l = KBound::finite(1)) {
        return DecompSpec{SpecKind::Linear, k, l};
    }
    static DecompSpec star(KBound k) { return DecompSpec{SpecKind::Star, k, KBound::finite(1)}; }

    friend bool operator==(const DecompSpec&, const DecompSpec&) = default;
};

/// Total edge labeling of a graph against a target spec. Validity is not an
/// invariant; run validate_decomposition.
struct Decomposition {
    Graph graph;
    std::vector<EdgeLabel> labels; // indexed by edge id, total
    DecompSpec spec;

    Decomposition() = default;
    Decomposition(Graph g, std::vector<EdgeLabel> lab, DecompSpec s)
        : graph(std::move(g)), labels(std::move(lab)), spec(s) {
        if (labels.size() != static_cast<std::size_t>(graph.edge_count()))
            throw std::invalid_argument("labeling is not total over the edge set");
    }

    EdgeLabel label(int edge_id) const { return labels[static_cast<std::size_t>(edge_id)]; }
};

enum class ViolationKind : std::uint8_t {
    AdjacentMatchingEdges, // two Matching-side edges share a vertex (bound-1 side)
    SideDegreeTooHigh,     // vertex of degree >= 3 within a linear-forest side
    SideCycle,             // cycle within a side that must be a forest
    PathTooLong,           // path component longer than the side bound
    NonStarComponent,      // star side: edge joining two vertices of side-degree >= 2
    StarTooLarge,          // star side: center degree exceeds k
};

std::string violation_kind_name(ViolationKind k);

struct Violation {
    ViolationKind kind;
    // Which label side the violation lives on.
    EdgeLabel side;
    // Offending vertex (center / shared vertex / cycle witness), -1 if n/a.
    VertexId vertex = -1;
    // Offending edges where meaningful (the adjacent pair, the closing edge, ...).
    std::vector<int> edge_ids;
    // Structure size vs bound for the size violations.
    long long size = -1;
    long long bound = -1;
};

struct Verdict {
    bool valid = true;
    std::vector<Violation> violations;
};

/// Checks a total labeling against its spec and reports every violating
/// structure found (machine-readable; not prose).
Verdict validate_decomposition(const Decomposition& d);

} // namespace mbfd
