#pragma once

#include "mbfd/decomposition.hpp"
#include "mbfd/gadgets.hpp"
#include "mbfd/graph.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace mbfd {

/// A literal: 0-based variable index, positive or negated.
struct Literal {
    int var = 0;
    bool negated = false;
    friend bool operator==(const Literal&, const Literal&) = default;
};

/// A SAT instance in the restricted shape the reduction consumes: clauses of
/// size 2 or 3, every variable with exactly two positive occurrences and one
/// negative occurrence, no repeated variable within a clause.
struct CnfInstance {
    int variable_count = 0;
    std::vector<std::vector<Literal>> clauses;

    struct Occurrences {
        int positive_first = -1;  // clause index of the first positive occurrence
        int positive_second = -1; // clause index of the second positive occurrence
        int negative = -1;        // clause index of the negative occurrence
    };
    std::vector<Occurrences> occurrence; // per variable

    /// Which positive slot (0 or 1) a variable occupies in a clause, or 2 for
    /// the negative slot.
    int slot_of(int var, int clause) const;
};

class CnfShapeError : public std::runtime_error {
public:
    explicit CnfShapeError(const std::string& what) : std::runtime_error(what) {}
};

/// Validates the shape invariants and fills the occurrence index.
CnfInstance make_instance(int variable_count, std::vector<std::vector<Literal>> clauses);

/// DIMACS CNF (`p cnf <nvars> <nclauses>` header, clauses as 0-terminated
/// nonzero int lines, 'c' comments).
CnfInstance load_instance(std::istream& in);
CnfInstance load_instance(const std::string& text);
std::string serialize_instance(const CnfInstance& inst);

using Assignment = std::vector<bool>; // per variable

bool satisfies(const CnfInstance& inst, const Assignment& phi);

/// Exhaustive SAT oracle; requires <= 24 variables. Returns the assignment
/// with the lowest binary encoding.
std::optional<Assignment> brute_force_sat(const CnfInstance& inst);

/// Seeded random instance of the restricted shape (>= 2 variables).
/// Deterministic across platforms: a fixed PRNG and hand-rolled shuffling.
CnfInstance generate_random_instance(int variable_count, std::uint64_t seed);

/// Designated elements of the reduction graph.
struct ReductionPinMap {
    struct VariablePins {
        VertexId positive_vertex[2]; // p^x for the two positive occurrences
        VertexId negative_vertex;    // n^x
        Edge positive_edge[2];       // e^x for the two positive occurrences
        Edge negative_edge;          // e^x for the negative occurrence
        // Translation of the variable gadget's local edges to global edges,
        // aligned with build_gadget(Variable, k)'s edge ids.
        std::vector<int> gadget_edge_to_global;
    };
    struct ClausePins {
        VertexId clause_vertex;             // v_C
        std::vector<Edge> connector_edges;  // v_C to each input vertex, clause order
        std::optional<Edge> forcer_pin_edge; // e_C for size-2 clauses
        std::vector<int> forcer_edge_to_global; // translation for the attached forcer
    };
    std::vector<VariablePins> variables;
    std::vector<ClausePins> clauses;
};

/// One variable gadget per variable, one vertex per clause, one connector per
/// occurrence, and a pendant 1-path forcer on every size-2 clause vertex.
/// Deterministic vertex numbering: variable gadget blocks in variable order,
/// then clause vertices, then forcer blocks.
std::pair<Graph, ReductionPinMap> build_reduction_graph(const CnfInstance& inst, int k);

/// Builds a valid matching + k-bounded-linear-forest labeling of the
/// reduction graph from a satisfying assignment (witness clause variable:
/// lowest index that makes the clause true). Throws std::invalid_argument if
/// phi leaves some clause unsatisfied.
Decomposition assignment_to_decomposition(const CnfInstance& inst, int k, const Assignment& phi);

/// Reads an assignment off a valid decomposition of the reduction graph
/// (true iff a positive input edge is on the forest side). Throws
/// std::invalid_argument for an invalid decomposition and std::logic_error if
/// the recovered assignment fails to satisfy the instance.
Assignment decomposition_to_assignment(const CnfInstance& inst, const ReductionPinMap& pins,
                                       const Decomposition& d);

} // namespace mbfd
