#include "mbfd/mbsfd.hpp"

#include <algorithm>
#include <map>

namespace mbfd {

MbsfdReduction build_sggf_instance(const Graph& g, KBound k) {
    if (!k.is_infinite() && k.value() < 2)
        throw std::invalid_argument("the reduction is defined for k >= 2");
    if (!k.is_infinite() && g.max_degree() > k.value() + 1)
        throw std::invalid_argument("degree > k+1; the caller short-circuits these");

    MbsfdReduction red;
    red.family = chain_decompose(g);
    for (const Chain& chain : red.family.chains)
        red.profiles.push_back(chain_profile(chain, k));

    int x_count = static_cast<int>(red.family.high_degree.size());
    int y_count = static_cast<int>(red.family.chains.size());
    red.instance.graph = MultiGraph(x_count + y_count);
    red.instance.sets.resize(static_cast<std::size_t>(x_count + y_count));
    red.x_of = red.family.high_degree;

    std::map<VertexId, int> x_node;
    for (int i = 0; i < x_count; ++i) {
        VertexId v = red.family.high_degree[static_cast<std::size_t>(i)];
        x_node[v] = i;
        // a star centred at v has deg(v) - d_S(v) spokes, so d_S(v) must
        // reach deg(v) - k; above-degree-(k+1) vertices never get here
        bool must_match = !k.is_infinite() && g.degree(v) >= k.value() + 1;
        red.instance.sets[static_cast<std::size_t>(i)] =
            must_match ? GapSet{1} : GapSet{0, 1};
    }
    for (int c = 0; c < y_count; ++c) {
        const Chain& chain = red.family.chains[static_cast<std::size_t>(c)];
        const ChainProfile& profile = red.profiles[static_cast<std::size_t>(c)];
        int y = x_count + c;
        red.instance.sets[static_cast<std::size_t>(y)] =
            GapSet(profile.achievable.begin(), profile.achievable.end());
        for (int slot = 0; slot < chain.slot_count(); ++slot) {
            red.instance.graph.add_edge(x_node.at(chain.slot_vertex(slot)), y);
            red.edge_slot.emplace_back(c, slot);
        }
    }
    return red;
}

Decomposition lift_solution(const Graph& g, const MbsfdReduction& red,
                            const std::vector<int>& selected, KBound k) {
    std::vector<EdgeLabel> labels(static_cast<std::size_t>(g.edge_count()), EdgeLabel::Forest);

    std::vector<BoundaryPattern> pattern(red.family.chains.size());
    for (std::size_t c = 0; c < red.family.chains.size(); ++c)
        pattern[c].assign(static_cast<std::size_t>(red.family.chains[c].slot_count()),
                          SlotState::InForest);
    for (int h : selected) {
        auto [c, slot] = red.edge_slot[static_cast<std::size_t>(h)];
        pattern[static_cast<std::size_t>(c)][static_cast<std::size_t>(slot)] =
            SlotState::InMatching;
    }

    for (std::size_t c = 0; c < red.family.chains.size(); ++c) {
        const Chain& chain = red.family.chains[c];
        auto it = red.profiles[c].witnesses.find(pattern[c]);
        if (it == red.profiles[c].witnesses.end())
            throw std::logic_error("no witness for a selected boundary pattern");
        const std::vector<EdgeLabel>& w = it->second;
        for (int i = 0; i < chain.length(); ++i)
            labels[static_cast<std::size_t>(chain.edge_ids[static_cast<std::size_t>(i)])] =
                w[static_cast<std::size_t>(i)];
    }
    return Decomposition(g, std::move(labels), DecompSpec::star(k));
}

namespace {

// k = 1: both sides are matchings, which exist iff max degree <= 2 and every
// cycle component is even; alternate labels along each path and cycle.
std::optional<Decomposition> solve_two_matchings(const Graph& g) {
    int n = g.vertex_count();
    if (g.max_degree() > 2) return std::nullopt;
    std::vector<EdgeLabel> labels(static_cast<std::size_t>(g.edge_count()), EdgeLabel::Forest);
    std::vector<bool> seen_edge(static_cast<std::size_t>(g.edge_count()), false);

    auto walk = [&](VertexId start, int first_edge) -> bool {
        EdgeLabel next = EdgeLabel::Forest;
        VertexId prev = start;
        int edge = first_edge;
        int count = 0;
        while (true) {
            seen_edge[static_cast<std::size_t>(edge)] = true;
            labels[static_cast<std::size_t>(edge)] = next;
            next = next == EdgeLabel::Forest ? EdgeLabel::Matching : EdgeLabel::Forest;
            ++count;
            VertexId cur = g.edge(edge).other(prev);
            if (cur == start) return count % 2 == 0; // closed cycle: needs even length
            int follow = -1;
            for (const auto& [w, id] : g.incident(cur))
                if (id != edge) follow = id;
            if (follow < 0) return true; // end of a path
            prev = cur;
            edge = follow;
        }
    };

    for (VertexId v = 0; v < n; ++v) {
        if (g.degree(v) != 1) continue;
        int e0 = g.incident(v)[0].second;
        if (!seen_edge[static_cast<std::size_t>(e0)]) walk(v, e0);
    }
    for (int id = 0; id < g.edge_count(); ++id) {
        if (seen_edge[static_cast<std::size_t>(id)]) continue;
        if (!walk(g.edge(id).lo(), id)) return std::nullopt; // odd cycle
    }
    return Decomposition(g, std::move(labels), DecompSpec::star(KBound::finite(1)));
}

} // namespace

MbsfdResult solve_mbsfd(const Graph& g, KBound k) {
    MbsfdResult result;
    if (!k.is_infinite()) {
        for (VertexId v = 0; v < g.vertex_count(); ++v) {
            if (g.degree(v) >= k.value() + 2) {
                result.method = MbsfdMethod::DegreeShortCircuit;
                return result;
            }
        }
    }
    if (!k.is_infinite() && k.value() == 1) {
        result.method = MbsfdMethod::MatchingPair;
        result.decomposition = solve_two_matchings(g);
        return result;
    }

    result.method = MbsfdMethod::Pipeline;
    MbsfdReduction red = build_sggf_instance(g, k);
    for (const ChainProfile& p : red.profiles)
        if (p.achievable.empty()) return result; // a chain admits no labeling at all

    auto selected = solve_sggf(red.instance);
    if (!selected) return result;
    Decomposition lifted = lift_solution(g, red, *selected, k);
    Verdict verdict = validate_decomposition(lifted);
    if (!verdict.valid) throw std::logic_error("lifted certificate failed validation");
    result.decomposition = std::move(lifted);
    return result;
}

} // namespace mbfd
