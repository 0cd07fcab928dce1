#pragma once

#include "mbfd/decomposition.hpp"
#include "mbfd/graph.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

namespace testsupport {

// Deterministic PRNG for reproducible corpora (no std::shuffle / distributions).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed * 0x9E3779B97F4A7C15ull + 0xD1B54A32D192ED03ull) {}

    std::uint64_t next() {
        state_ ^= state_ >> 27;
        state_ *= 0x3C79AC492BA7B653ull;
        state_ ^= state_ >> 33;
        state_ *= 0x1C69B3F74AC4AE35ull;
        return state_ ^= state_ >> 27;
    }
    int below(int bound) { return static_cast<int>(next() % static_cast<std::uint64_t>(bound)); }
    bool coin() { return next() & 1; }

private:
    std::uint64_t state_;
};

// Random simple graph: n vertices, m distinct edges (clamped to C(n,2)).
inline mbfd::Graph random_graph(Rng& rng, int n, int m) {
    m = std::min(m, n * (n - 1) / 2);
    std::set<mbfd::Edge> edges;
    while (static_cast<int>(edges.size()) < m) {
        int u = rng.below(n);
        int v = rng.below(n);
        if (u != v) edges.insert(mbfd::Edge(u, v));
    }
    return mbfd::Graph(n, {edges.begin(), edges.end()});
}

// Random simple graph with max degree <= dmax; gives up adding when stuck.
inline mbfd::Graph random_bounded_degree_graph(Rng& rng, int n, int m, int dmax) {
    std::set<mbfd::Edge> edges;
    std::vector<int> deg(static_cast<std::size_t>(n), 0);
    int stall = 0;
    while (static_cast<int>(edges.size()) < m && stall < 400) {
        int u = rng.below(n);
        int v = rng.below(n);
        if (u == v || deg[static_cast<std::size_t>(u)] >= dmax ||
            deg[static_cast<std::size_t>(v)] >= dmax || edges.count(mbfd::Edge(u, v))) {
            ++stall;
            continue;
        }
        stall = 0;
        edges.insert(mbfd::Edge(u, v));
        deg[static_cast<std::size_t>(u)]++;
        deg[static_cast<std::size_t>(v)]++;
    }
    return mbfd::Graph(n, {edges.begin(), edges.end()});
}

// Exhaustive reference for the backtracking solver: try all 2^m labelings
// through the validator.
inline std::uint64_t naive_decomposition_count(const mbfd::Graph& g, const mbfd::DecompSpec& spec) {
    int m = g.edge_count();
    std::uint64_t count = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
        std::vector<mbfd::EdgeLabel> labels(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i)
            labels[static_cast<std::size_t>(i)] =
                (mask >> i) & 1 ? mbfd::EdgeLabel::Matching : mbfd::EdgeLabel::Forest;
        if (mbfd::validate_decomposition(mbfd::Decomposition(g, labels, spec)).valid) ++count;
    }
    return count;
}

inline bool naive_decomposable(const mbfd::Graph& g, const mbfd::DecompSpec& spec) {
    int m = g.edge_count();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
        std::vector<mbfd::EdgeLabel> labels(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i)
            labels[static_cast<std::size_t>(i)] =
                (mask >> i) & 1 ? mbfd::EdgeLabel::Matching : mbfd::EdgeLabel::Forest;
        if (mbfd::validate_decomposition(mbfd::Decomposition(g, labels, spec)).valid) return true;
    }
    return false;
}

// Exhaustive maximum matching size (subset enumeration over edges).
inline int exhaustive_max_matching_size(const mbfd::MultiGraph& g) {
    int m = g.edge_count();
    int best = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
        std::vector<int> deg(static_cast<std::size_t>(g.vertex_count()), 0);
        bool ok = true;
        int size = 0;
        for (int id = 0; id < m && ok; ++id)
            if ((mask >> id) & 1) {
                const mbfd::Edge& e = g.edge(id);
                if (++deg[static_cast<std::size_t>(e.lo())] > 1 ||
                    ++deg[static_cast<std::size_t>(e.hi())] > 1)
                    ok = false;
                ++size;
            }
        if (ok) best = std::max(best, size);
    }
    return best;
}

// Independent bipartite matcher (augmenting paths) for the bipartite
// cross-check; returns max matching size, or nullopt if g is not bipartite.
inline std::optional<int> bipartite_matching_size(const mbfd::MultiGraph& g) {
    int n = g.vertex_count();
    std::vector<int> color(static_cast<std::size_t>(n), -1);
    for (int s = 0; s < n; ++s) {
        if (color[static_cast<std::size_t>(s)] >= 0) continue;
        color[static_cast<std::size_t>(s)] = 0;
        std::vector<int> stack{s};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (const auto& [w, id] : g.incident(v)) {
                if (color[static_cast<std::size_t>(w)] < 0) {
                    color[static_cast<std::size_t>(w)] = 1 - color[static_cast<std::size_t>(v)];
                    stack.push_back(w);
                } else if (color[static_cast<std::size_t>(w)] == color[static_cast<std::size_t>(v)]) {
                    return std::nullopt;
                }
            }
        }
    }
    std::vector<int> mate(static_cast<std::size_t>(n), -1);
    std::vector<bool> seen;
    auto try_kuhn = [&](auto&& self, int v) -> bool {
        for (const auto& [w, id] : g.incident(v)) {
            if (seen[static_cast<std::size_t>(w)]) continue;
            seen[static_cast<std::size_t>(w)] = true;
            if (mate[static_cast<std::size_t>(w)] < 0 || self(self, mate[static_cast<std::size_t>(w)])) {
                mate[static_cast<std::size_t>(w)] = v;
                mate[static_cast<std::size_t>(v)] = w;
                return true;
            }
        }
        return false;
    };
    int size = 0;
    for (int v = 0; v < n; ++v) {
        if (color[static_cast<std::size_t>(v)] != 0 || mate[static_cast<std::size_t>(v)] >= 0)
            continue;
        seen.assign(static_cast<std::size_t>(n), false);
        if (try_kuhn(try_kuhn, v)) ++size;
    }
    return size;
}

} // namespace testsupport
