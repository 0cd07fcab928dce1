#include "mbfd/chains.hpp"

#include <algorithm>

namespace mbfd {

int Chain::slot_count() const {
    if (kind == ChainKind::Cycle) return anchored ? 2 : 0;
    return (end_a == EndClass::HighDegree ? 1 : 0) + (end_b == EndClass::HighDegree ? 1 : 0);
}

int Chain::slot_edge(int slot) const {
    if (kind == ChainKind::Cycle) return slot == 0 ? edge_ids.front() : edge_ids.back();
    if (end_a == EndClass::HighDegree && slot == 0) return edge_ids.front();
    return edge_ids.back();
}

VertexId Chain::slot_vertex(int slot) const {
    if (kind == ChainKind::Cycle) return vertices.front();
    if (end_a == EndClass::HighDegree && slot == 0) return vertices.front();
    return vertices.back();
}

ChainFamily chain_decompose(const Graph& g) {
    ChainFamily fam;
    int n = g.vertex_count();
    int m = g.edge_count();
    fam.edge_chain.assign(static_cast<std::size_t>(m), -1);
    for (VertexId v = 0; v < n; ++v)
        if (g.degree(v) >= 3) fam.high_degree.push_back(v);

    std::vector<bool> used(static_cast<std::size_t>(m), false);
    auto end_class = [&](VertexId v) {
        return g.degree(v) >= 3 ? EndClass::HighDegree : EndClass::Leaf;
    };

    // Walk from `start` along `first_edge` through degree-2 vertices until a
    // vertex of degree != 2 is reached, or the walk returns to `start`.
    auto walk = [&](VertexId start, int first_edge) {
        Chain chain;
        int chain_index = static_cast<int>(fam.chains.size());
        chain.vertices.push_back(start);
        VertexId prev = start;
        int edge = first_edge;
        while (true) {
            used[static_cast<std::size_t>(edge)] = true;
            chain.edge_ids.push_back(edge);
            fam.edge_chain[static_cast<std::size_t>(edge)] = chain_index;
            VertexId cur = g.edge(edge).other(prev);
            if (cur == start) {
                chain.kind = ChainKind::Cycle;
                chain.anchored = g.degree(start) != 2;
                return chain;
            }
            if (g.degree(cur) != 2) {
                chain.vertices.push_back(cur);
                chain.kind = ChainKind::Path;
                chain.end_a = end_class(start);
                chain.end_b = end_class(cur);
                return chain;
            }
            chain.vertices.push_back(cur);
            int next = -1;
            for (const auto& [w, id] : g.incident(cur))
                if (id != edge) {
                    next = id;
                    break;
                }
            prev = cur;
            edge = next;
        }
    };

    // chains hanging off anchor vertices (degree 1 or >= 3)
    for (VertexId v = 0; v < n; ++v) {
        if (g.degree(v) == 2 || g.degree(v) == 0) continue;
        for (const auto& [w, id] : g.incident(v)) {
            if (used[static_cast<std::size_t>(id)]) continue;
            fam.chains.push_back(walk(v, id));
        }
    }
    // leftover edges live on pure degree-2 cycles
    for (int id = 0; id < m; ++id) {
        if (used[static_cast<std::size_t>(id)]) continue;
        fam.chains.push_back(walk(g.edge(id).lo(), id));
    }
    return fam;
}

namespace {

// Forward DP over chain edge labels under the star-forest boundary rules:
//  - no two consecutive matching edges (cyclically for cycles),
//  - maximal forest runs of length <= 2,
//  - a forest run containing a slot edge (an end edge at a high-degree
//    vertex) is exactly that edge,
//  - a single-edge chain between two high-degree vertices cannot be forest,
//  - pure cycles are never entirely forest and their wrapped run obeys the
//    same caps.
struct ChainDp {
    int length = 0;
    bool cyclic = false; // pure cycle: adjacency and runs wrap at v0
    int cap_first = 2, cap_last = 2;
    bool both_ends_high = false;
    std::optional<EdgeLabel> force_first, force_last;

    // state: run = forest-run length ending at the current edge (0 = the
    // edge is matching); pfx = leading forest-run length, frozen at the
    // first matching edge; all_forest = no matching edge so far.
    struct Key {
        int run = 0;
        int pfx = 0;
        bool all_forest = false;
        auto operator<=>(const Key&) const = default;
    };

    std::optional<std::vector<EdgeLabel>> solve() const {
        std::vector<std::map<Key, std::pair<Key, EdgeLabel>>> parent(
            static_cast<std::size_t>(length));

        auto push = [&](int i, Key key, Key from, EdgeLabel lab) {
            parent[static_cast<std::size_t>(i)].emplace(key, std::make_pair(from, lab));
        };

        for (EdgeLabel lab : {EdgeLabel::Forest, EdgeLabel::Matching}) {
            if (force_first && *force_first != lab) continue;
            if (length == 1 && force_last && *force_last != lab) continue;
            if (lab == EdgeLabel::Forest) {
                if (cap_first < 1) continue;
                push(0, Key{1, 1, true}, Key{}, lab);
            } else {
                push(0, Key{0, 0, false}, Key{}, lab);
            }
        }
        for (int i = 1; i < length; ++i) {
            for (const auto& [s, unused] : parent[static_cast<std::size_t>(i - 1)]) {
                for (EdgeLabel lab : {EdgeLabel::Forest, EdgeLabel::Matching}) {
                    if (i == length - 1 && force_last && *force_last != lab) continue;
                    if (lab == EdgeLabel::Matching) {
                        if (s.run == 0) continue; // adjacent matching edges
                        push(i, Key{0, s.pfx, false}, s, lab);
                    } else {
                        int run = s.run + 1;
                        if (run > 2) continue;
                        if (s.all_forest && run > cap_first) continue;
                        int pfx = s.all_forest ? run : s.pfx;
                        push(i, Key{run, pfx, s.all_forest}, s, lab);
                    }
                }
            }
        }

        for (const auto& [s, unused] : parent[static_cast<std::size_t>(length - 1)]) {
            if (!accept(s)) continue;
            std::vector<EdgeLabel> labels(static_cast<std::size_t>(length));
            Key cur = s;
            for (int i = length - 1; i >= 0; --i) {
                const auto& [from, lab] = parent[static_cast<std::size_t>(i)].at(cur);
                labels[static_cast<std::size_t>(i)] = lab;
                cur = from;
            }
            return labels;
        }
        return std::nullopt;
    }

    bool accept(const Key& s) const {
        if (length == 1) {
            if (s.run == 0) return true;
            if (both_ends_high) return false;
            return s.run <= cap_first && s.run <= cap_last;
        }
        if (cyclic) {
            if (s.all_forest) return false; // the forest side may not contain a cycle
            bool first_forest = s.pfx > 0;
            if (s.run == 0) return first_forest; // two matching edges meet at v0 otherwise
            if (!first_forest) return true;      // runs already capped at 2
            return s.run + s.pfx <= 2;           // leading and trailing runs merge at v0
        }
        if (s.run > 0) {
            if (s.run > cap_last) return false;
            if (s.all_forest && both_ends_high) return false;
        }
        return true;
    }
};

} // namespace

ChainProfile chain_profile(const Chain& chain, KBound k) {
    if (!k.is_infinite() && k.value() < 2)
        throw std::invalid_argument("chain profiles are defined for k >= 2");
    ChainProfile profile;
    int slots = chain.slot_count();

    bool high_first = chain.kind == ChainKind::Cycle ? chain.anchored
                                                     : chain.end_a == EndClass::HighDegree;
    bool high_last = chain.kind == ChainKind::Cycle ? chain.anchored
                                                    : chain.end_b == EndClass::HighDegree;

    auto run_pattern = [&](const BoundaryPattern& pattern) {
        ChainDp dp;
        dp.length = chain.length();
        dp.cyclic = chain.kind == ChainKind::Cycle && !chain.anchored;
        dp.cap_first = high_first ? 1 : 2;
        dp.cap_last = high_last ? 1 : 2;
        dp.both_ends_high = high_first && high_last && chain.kind == ChainKind::Path;

        int slot_idx = 0;
        if (high_first) {
            dp.force_first = pattern[static_cast<std::size_t>(slot_idx)] == SlotState::InMatching
                                 ? EdgeLabel::Matching
                                 : EdgeLabel::Forest;
            ++slot_idx;
        }
        if (high_last) {
            dp.force_last = pattern[static_cast<std::size_t>(slot_idx)] == SlotState::InMatching
                                ? EdgeLabel::Matching
                                : EdgeLabel::Forest;
        }
        return dp.solve();
    };

    std::vector<BoundaryPattern> patterns;
    if (slots == 0) {
        patterns.push_back({});
    } else if (slots == 1) {
        patterns.push_back({SlotState::InMatching});
        patterns.push_back({SlotState::InForest});
    } else {
        for (SlotState a : {SlotState::InMatching, SlotState::InForest})
            for (SlotState b : {SlotState::InMatching, SlotState::InForest}) {
                // both end edges of an anchored cycle meet at the anchor and
                // cannot both be matching edges
                if (chain.kind == ChainKind::Cycle && a == SlotState::InMatching &&
                    b == SlotState::InMatching)
                    continue;
                // a single edge carries both slots; the states must agree
                if (chain.length() == 1 && a != b) continue;
                patterns.push_back({a, b});
            }
    }

    for (const BoundaryPattern& pattern : patterns) {
        auto witness = run_pattern(pattern);
        if (!witness) continue;
        profile.witnesses.emplace(pattern, std::move(*witness));
        int count = 0;
        for (SlotState s : pattern)
            if (s == SlotState::InMatching) ++count;
        profile.achievable.insert(count);
    }
    return profile;
}

} // namespace mbfd
