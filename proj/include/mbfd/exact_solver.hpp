#pragma once

#include "mbfd/decomposition.hpp"
#include "mbfd/graph.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

namespace mbfd {

struct SearchLimits {
    std::size_t max_edges = 64;
};

class SizeCapError : public std::runtime_error {
public:
    SizeCapError(std::size_t edges, std::size_t cap)
        : std::runtime_error("graph has " + std::to_string(edges) + " edges, above the search cap of " +
                             std::to_string(cap) + "; use the polynomial solver or raise the cap"),
          edges_(edges), cap_(cap) {}
    std::size_t edges() const { return edges_; }
    std::size_t cap() const { return cap_; }

private:
    std::size_t edges_;
    std::size_t cap_;
};

/// Restriction of an enumeration to the designated edges of interest.
struct EnumerationProjection {
    std::vector<int> core_edges; // edge ids, ordered, no duplicates
};

struct EnumerationResult {
    // Distinct labelings restricted to the projection's core edges, in
    // canonical (sorted) order. Each entry is aligned with core_edges.
    std::set<std::vector<EdgeLabel>> projections;
    std::uint64_t total_count = 0; // number of full valid decompositions
};

/// Finds one valid decomposition, or nullopt iff none exists. Exhaustive up
/// to the edge cap; throws SizeCapError above it.
std::optional<Decomposition> solve_exact(const Graph& g, const DecompSpec& spec,
                                         const SearchLimits& limits = {});

/// As solve_exact, but a partial labeling may be imposed; unforced edges are
/// searched. Entries of `forced` are indexed by edge id.
std::optional<Decomposition> solve_exact_constrained(const Graph& g, const DecompSpec& spec,
                                                     const std::vector<std::optional<EdgeLabel>>& forced,
                                                     const SearchLimits& limits = {});

EnumerationResult enumerate_decompositions(const Graph& g, const DecompSpec& spec,
                                           const EnumerationProjection& proj,
                                           const SearchLimits& limits = {});

enum class SearchStep { Continue, Stop };

/// Streams every valid decomposition (as a full label vector, indexed by edge
/// id) through the callback in a fixed deterministic order. Optionally a
/// partial labeling is imposed.
void for_each_decomposition(const Graph& g, const DecompSpec& spec,
                            const std::function<SearchStep(const std::vector<EdgeLabel>&)>& fn,
                            const SearchLimits& limits = {},
                            const std::vector<std::optional<EdgeLabel>>* forced = nullptr);

} // namespace mbfd
