#include "mbfd/gadgets.hpp"

#include <json.hpp>

#include <set>

namespace mbfd {

std::string gadget_kind_name(GadgetKind k) {
    switch (k) {
    case GadgetKind::MForcer: return "m_forcer";
    case GadgetKind::FForcer: return "f_forcer";
    case GadgetKind::Or: return "or";
    case GadgetKind::Rejector: return "rejector";
    case GadgetKind::Variable: return "variable";
    }
    return "unknown";
}

std::optional<GadgetKind> gadget_kind_from_name(const std::string& name) {
    if (name == "m_forcer") return GadgetKind::MForcer;
    if (name == "f_forcer") return GadgetKind::FForcer;
    if (name == "or") return GadgetKind::Or;
    if (name == "rejector") return GadgetKind::Rejector;
    if (name == "variable") return GadgetKind::Variable;
    return std::nullopt;
}

namespace {

struct Proto {
    int n = 0;
    std::vector<Edge> edges;
    VertexId pin = 0;  // designated degree-1 vertex
    Edge pin_edge{0, 0};
};

// The four matching-forcer shapes. Vertex 0 is the pin; the remaining indices
// follow the drawing top-to-bottom, left branch before right branch.
Proto m_forcer_proto(int k) {
    Proto p;
    if (k == 3) {
        // pendant path v-y-x into two cherries hanging off x
        p.n = 9;
        p.edges = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {3, 5}, {2, 6}, {6, 7}, {6, 8}};
    } else if (k == 4 || k == 5) {
        // hub x with two arms, each an anchor with a pendant plus one
        // triangle-ladder level
        p.n = 16;
        p.edges = {{0, 1},                                                          // e
                   {1, 2},  {2, 3},  {2, 4},  {4, 5},  {4, 6},  {5, 6},  {5, 7},
                   {6, 8},  {7, 8},                                                 // left arm
                   {1, 9},  {9, 10}, {9, 11}, {11, 12}, {11, 13}, {12, 13}, {12, 14},
                   {13, 15}, {14, 15}};                                             // right arm
    } else if (k == 6 || k == 7) {
        // as above with a second ladder level per arm
        p.n = 20;
        p.edges = {{0, 1},
                   {1, 2},   {2, 3},   {2, 4},   {4, 5},   {4, 6},   {5, 6},
                   {5, 7},   {6, 8},   {7, 8},   {7, 9},   {8, 10},  {9, 10},
                   {1, 11},  {11, 12}, {11, 13}, {13, 14}, {13, 15}, {14, 15},
                   {14, 16}, {15, 17}, {16, 17}, {16, 18}, {17, 19}, {18, 19}};
    } else { // k >= 8
        // hub x between two diamonds (K4 minus an edge)
        p.n = 10;
        p.edges = {{0, 1}, {1, 2}, {2, 3}, {2, 4}, {3, 4}, {3, 5}, {4, 5},
                   {1, 6}, {6, 7}, {6, 8}, {7, 8}, {7, 9}, {8, 9}};
    }
    p.pin = 0;
    p.pin_edge = {0, 1};
    return p;
}

// Splices `part` into `acc`, mapping part's pin onto `pin_target` and the
// rest onto fresh indices starting at acc.n. Returns nothing; extends acc.
void splice_onto_pin(Proto& acc, const Proto& part, VertexId pin_target) {
    int base = acc.n;
    auto remap = [&](VertexId v) -> VertexId {
        if (v == part.pin) return pin_target;
        // part vertices are numbered with the pin at 0
        return base + (v < part.pin ? v : v - 1);
    };
    acc.n += part.n - 1;
    for (const Edge& e : part.edges) acc.edges.emplace_back(remap(e.lo()), remap(e.hi()));
}

Proto f_forcer_proto(int k, int ell) {
    Proto p;
    Proto mf = m_forcer_proto(k);
    p.pin = 0;
    p.pin_edge = {0, 1};
    if (ell == 1) {
        // fresh pin vertex attached to a matching forcer's pin
        p.n = 2;
        p.edges = {{0, 1}};
        splice_onto_pin(p, mf, 1);
        return p;
    }
    // path v=0, 1, ..., ell-1, u=ell with one matching forcer hanging on each
    // interior path vertex
    p.n = ell + 1;
    for (int i = 0; i < ell; ++i) p.edges.emplace_back(i, i + 1);
    for (int j = 1; j <= ell - 1; ++j) splice_onto_pin(p, mf, j);
    return p;
}

PinnedGadget finish(GadgetKind kind, int k, int ell, const Proto& p,
                    std::map<std::string, VertexId> vpins, std::map<std::string, Edge> epins) {
    PinnedGadget g;
    g.kind = kind;
    g.k = k;
    g.ell = ell;
    g.graph = Graph(p.n, p.edges);
    g.vertex_pins = std::move(vpins);
    g.edge_pins = std::move(epins);
    return g;
}

Proto or_proto(int k) {
    // p1=0 p2=1 o=2 v1=3 v2=4 x=5, with a (k-2)-forest-forcer pinned at v2
    Proto p;
    p.n = 6;
    p.edges = {{0, 3}, {1, 4}, {3, 5}, {4, 5}, {5, 2}};
    splice_onto_pin(p, f_forcer_proto(k, k - 2), 4);
    return p;
}

Proto rejector_proto(int k) {
    // n'=0 n=1, chain u_1 w_1 u_2 ... w_q u_{q+1} = 2..2q+2, then one
    // (k-2)-forest-forcer per w_j
    int q = k / 2;
    Proto p;
    p.n = 2 * q + 3;
    p.edges.emplace_back(0, 2);          // e' = n' u_1
    p.edges.emplace_back(1, 2 * q + 2);  // e  = n  u_{q+1}
    for (int j = 1; j <= q; ++j) {
        int wj = 2 * j + 1;
        p.edges.emplace_back(wj, 2 * j);     // w_j u_j
        p.edges.emplace_back(wj, 2 * j + 2); // w_j u_{j+1}
    }
    Proto ff = f_forcer_proto(k, k - 2);
    for (int j = 1; j <= q; ++j) {
        int base = p.n; // forcer pin v_j lands here, then gets tied to w_j
        p.n += ff.n;
        for (const Edge& e : ff.edges) p.edges.emplace_back(base + e.lo(), base + e.hi());
        p.edges.emplace_back(base, 2 * j + 1); // v_j w_j
    }
    return p;
}

} // namespace

PinnedGadget build_gadget(GadgetKind kind, int k, std::optional<int> ell) {
    if (k < 3) throw std::invalid_argument("gadgets require k >= 3");
    if (kind != GadgetKind::FForcer && ell.has_value())
        throw std::invalid_argument("ell is only meaningful for f_forcer");
    switch (kind) {
    case GadgetKind::MForcer: {
        Proto p = m_forcer_proto(k);
        return finish(kind, k, 0, p, {{"v", 0}}, {{"e", p.pin_edge}});
    }
    case GadgetKind::FForcer: {
        if (!ell) throw std::invalid_argument("f_forcer requires ell");
        if (*ell < 1 || *ell > k) throw std::invalid_argument("f_forcer requires 1 <= ell <= k");
        Proto p = f_forcer_proto(k, *ell);
        return finish(kind, k, *ell, p, {{"v", 0}}, {{"e", p.pin_edge}});
    }
    case GadgetKind::Or: {
        Proto p = or_proto(k);
        return finish(kind, k, 0, p, {{"p1", 0}, {"p2", 1}, {"o", 2}},
                      {{"e1", Edge(0, 3)}, {"e2", Edge(1, 4)}, {"f", Edge(5, 2)}});
    }
    case GadgetKind::Rejector: {
        int q = k / 2;
        Proto p = rejector_proto(k);
        return finish(kind, k, 0, p, {{"n_prime", 0}, {"n", 1}, {"o", 2}},
                      {{"e_prime", Edge(0, 2)}, {"e", Edge(1, 2 * q + 2)}});
    }
    case GadgetKind::Variable: {
        PinnedGadget O = build_gadget(GadgetKind::Or, k);
        PinnedGadget R = build_gadget(GadgetKind::Rejector, k);
        // Identify O.o with R.u_1 (the rejector's "o") and O.x with R.n';
        // the shared edge is O.f == R.e'.
        int nO = O.graph.vertex_count();
        auto mapO = [&](VertexId v) -> VertexId {
            // p1,p2 keep 0,1; n takes 2, so o moves to 3 and the rest shift by 1
            if (v <= 1) return v;
            return v + 1;
        };
        VertexId o_g = mapO(O.pin_vertex("o"));   // 3
        VertexId x_g = mapO(5);                   // O's inner vertex on f
        int r_base = nO + 1; // O occupies 0..nO (with index 2 reserved for n)
        auto mapR = [&](VertexId v) -> VertexId {
            if (v == R.pin_vertex("n_prime")) return x_g;
            if (v == R.pin_vertex("n")) return 2;
            if (v == R.pin_vertex("o")) return o_g;
            // remaining R vertices (indices 3..) pack after the O block
            return r_base + (v - 3);
        };
        std::vector<Edge> edges;
        for (const Edge& e : O.graph.edges()) edges.emplace_back(mapO(e.lo()), mapO(e.hi()));
        Edge eprime_R = R.pin_edge("e_prime");
        for (const Edge& e : R.graph.edges()) {
            if (e == eprime_R) continue; // shared with O's f
            edges.emplace_back(mapR(e.lo()), mapR(e.hi()));
        }
        Proto p;
        p.n = nO + 1 + (R.graph.vertex_count() - 3);
        p.edges = std::move(edges);
        Edge e1(mapO(O.pin_edge("e1").lo()), mapO(O.pin_edge("e1").hi()));
        Edge e2(mapO(O.pin_edge("e2").lo()), mapO(O.pin_edge("e2").hi()));
        Edge e(mapR(R.pin_edge("e").lo()), mapR(R.pin_edge("e").hi()));
        Edge eprime(x_g, o_g);
        return finish(kind, k, 0, p,
                      {{"p1", 0}, {"p2", 1}, {"n", 2}, {"n_prime", x_g}, {"o", o_g}},
                      {{"e1", e1}, {"e2", e2}, {"e", e}, {"e_prime", eprime}});
    }
    }
    throw std::logic_error("unreachable");
}

namespace {

std::vector<std::string> pin_edge_names(GadgetKind kind) {
    switch (kind) {
    case GadgetKind::MForcer:
    case GadgetKind::FForcer: return {"e"};
    case GadgetKind::Or: return {"e1", "e2", "f"};
    case GadgetKind::Rejector: return {"e_prime", "e"};
    case GadgetKind::Variable: return {"e1", "e2", "e"};
    }
    return {};
}

std::string pattern_string(const std::vector<std::string>& names,
                           const std::vector<EdgeLabel>& labels) {
    std::string s;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) s += ",";
        s += names[i] + (labels[i] == EdgeLabel::Forest ? ":F" : ":M");
    }
    return s;
}

// Length of the forest-path component containing vertex v (v has degree <= 1
// in the forest side of a valid linear decomposition).
int forest_path_length_at(const Graph& g, const std::vector<EdgeLabel>& labels, VertexId v) {
    int len = 0;
    VertexId prev = -1;
    VertexId cur = v;
    while (true) {
        VertexId next = -1;
        for (const auto& [w, id] : g.incident(cur)) {
            if (labels[static_cast<std::size_t>(id)] != EdgeLabel::Forest) continue;
            if (w == prev) continue;
            next = w;
            break;
        }
        if (next < 0) return len;
        ++len;
        prev = cur;
        cur = next;
    }
}

int forest_degree(const Graph& g, const std::vector<EdgeLabel>& labels, VertexId v) {
    int d = 0;
    for (const auto& [w, id] : g.incident(v))
        if (labels[static_cast<std::size_t>(id)] == EdgeLabel::Forest) ++d;
    return d;
}

struct ClauseFail {
    std::string clause;
    std::optional<std::vector<EdgeLabel>> witness;
    std::string pattern;
};

} // namespace

GadgetReport verify_gadget(const PinnedGadget& g, const SearchLimits& limits) {
    GadgetReport report;
    const Graph& graph = g.graph;
    DecompSpec spec = DecompSpec::linear(KBound::finite(g.k), KBound::finite(1));

    // Structural prerequisites from the definitions: each named pin vertex has
    // degree 1 and carries its named pin edge.
    for (const auto& [name, v] : g.vertex_pins) {
        bool is_deg1_pin = name == "v" || name == "p1" || name == "p2" || name == "n" ||
                           (name == "o" && g.kind == GadgetKind::Or) ||
                           (name == "n_prime" && g.kind == GadgetKind::Rejector);
        if (is_deg1_pin && graph.degree(v) != 1) {
            report.status = VerifyStatus::Fail;
            report.failing_clause = "pin_degree_one";
            report.missing_pattern = name;
            return report;
        }
    }
    std::vector<std::string> names = pin_edge_names(g.kind);
    std::vector<int> pin_ids;
    for (const std::string& name : names) {
        const Edge& e = g.edge_pins.at(name);
        auto id = graph.edge_id(e.lo(), e.hi());
        if (!id) {
            report.status = VerifyStatus::Fail;
            report.failing_clause = "pin_edge_missing";
            report.missing_pattern = name;
            return report;
        }
        pin_ids.push_back(*id);
    }

    std::optional<ClauseFail> fail;
    std::set<std::vector<EdgeLabel>> boundary_patterns_needing_witness; // filled per kind
    std::set<std::vector<EdgeLabel>> boundary_patterns_seen;
    std::set<std::vector<EdgeLabel>> core_labelings;

    auto restrict = [&](const std::vector<EdgeLabel>& labels) {
        std::vector<EdgeLabel> r(pin_ids.size());
        for (std::size_t i = 0; i < pin_ids.size(); ++i)
            r[i] = labels[static_cast<std::size_t>(pin_ids[i])];
        return r;
    };

    const EdgeLabel F = EdgeLabel::Forest;
    const EdgeLabel M = EdgeLabel::Matching;

    switch (g.kind) {
    case GadgetKind::MForcer:
    case GadgetKind::FForcer: break; // universal clauses only
    case GadgetKind::Or:
        for (EdgeLabel a : {F, M})
            for (EdgeLabel b : {F, M}) boundary_patterns_needing_witness.insert({a, b});
        break;
    case GadgetKind::Rejector:
        boundary_patterns_needing_witness = {{F, M}, {M, F}, {M, M}};
        break;
    case GadgetKind::Variable:
        // all partitions of {e1,e2,e} in which neither {e1,e} nor {e2,e} is
        // all-forest
        for (EdgeLabel a : {F, M})
            for (EdgeLabel b : {F, M})
                for (EdgeLabel c : {F, M}) {
                    if (c == F && (a == F || b == F)) continue;
                    boundary_patterns_needing_witness.insert({a, b, c});
                }
        break;
    }

    try {
        for_each_decomposition(
            graph, spec,
            [&](const std::vector<EdgeLabel>& labels) {
                report.decomposition_count++;
                std::vector<EdgeLabel> r = restrict(labels);
                switch (g.kind) {
                case GadgetKind::MForcer:
                    if (r[0] != M) {
                        fail = ClauseFail{"pin_edge_forced_into_matching", labels, ""};
                        return SearchStep::Stop;
                    }
                    break;
                case GadgetKind::FForcer: {
                    VertexId v = g.pin_vertex("v");
                    int len = r[0] == F ? forest_path_length_at(graph, labels, v) : 0;
                    if (len != g.ell) {
                        fail = ClauseFail{"pin_on_exact_length_forest_path", labels, ""};
                        return SearchStep::Stop;
                    }
                    break;
                }
                case GadgetKind::Or: {
                    core_labelings.insert(r);
                    boundary_patterns_seen.insert({r[0], r[1]});
                    if (r[0] == M && r[1] == M && r[2] != M) {
                        fail = ClauseFail{"or_matched_inputs_force_matched_output", labels, ""};
                        return SearchStep::Stop;
                    }
                    if ((r[0] == F || r[1] == F) && r[2] != F) {
                        fail = ClauseFail{"or_forest_input_forces_forest_output", labels, ""};
                        return SearchStep::Stop;
                    }
                    break;
                }
                case GadgetKind::Rejector: {
                    if (r[0] == F && r[1] == F) {
                        fail = ClauseFail{"rejector_admits_both_forest", labels, ""};
                        return SearchStep::Stop;
                    }
                    // the extension clause also needs the pin edges isolated
                    // within the forest side
                    bool short_components = true;
                    if (r[0] == F &&
                        forest_degree(graph, labels, g.pin_vertex("o")) > 1)
                        short_components = false;
                    if (r[1] == F) {
                        Edge e = g.pin_edge("e");
                        VertexId inner = e.other(g.pin_vertex("n"));
                        if (forest_degree(graph, labels, inner) > 1) short_components = false;
                    }
                    if (short_components) boundary_patterns_seen.insert(r);
                    break;
                }
                case GadgetKind::Variable: {
                    bool clash1 = r[0] == F && r[2] == F;
                    bool clash2 = r[1] == F && r[2] == F;
                    if (clash1 || clash2) {
                        fail = ClauseFail{"variable_admits_clash", labels, ""};
                        return SearchStep::Stop;
                    }
                    boundary_patterns_seen.insert(r);
                    break;
                }
                }
                return SearchStep::Continue;
            },
            limits);
    } catch (const SizeCapError& e) {
        report.status = VerifyStatus::SizeCap;
        report.edge_count = e.edges();
        report.cap = e.cap();
        return report;
    }

    if (fail) {
        report.status = VerifyStatus::Fail;
        report.failing_clause = fail->clause;
        if (fail->witness)
            report.witness = Decomposition(graph, *fail->witness, spec);
        return report;
    }

    if (report.decomposition_count == 0) {
        report.status = VerifyStatus::Fail;
        report.failing_clause = "exists_decomposition";
        return report;
    }

    for (const auto& pattern : boundary_patterns_needing_witness) {
        if (!boundary_patterns_seen.count(pattern)) {
            report.status = VerifyStatus::Fail;
            report.failing_clause = g.kind == GadgetKind::Or        ? "or_extension_missing"
                                    : g.kind == GadgetKind::Rejector ? "rejector_extension_missing"
                                                                     : "variable_extension_missing";
            std::vector<std::string> pat_names = g.kind == GadgetKind::Or
                                                     ? std::vector<std::string>{"e1", "e2"}
                                                     : names;
            report.missing_pattern = pattern_string(pat_names, pattern);
            return report;
        }
    }

    if (g.kind == GadgetKind::Or) {
        report.core_labelings.assign(core_labelings.begin(), core_labelings.end());
        if (core_labelings.size() != 4) {
            report.status = VerifyStatus::Fail;
            report.failing_clause = "or_core_labeling_count";
            return report;
        }
    }

    report.status = VerifyStatus::Pass;
    return report;
}

std::string serialize_pins(const PinnedGadget& g) {
    nlohmann::json pins;
    for (const auto& [name, v] : g.vertex_pins) pins[name] = v;
    nlohmann::json out;
    out["kind"] = gadget_kind_name(g.kind);
    out["k"] = g.k;
    if (g.kind == GadgetKind::FForcer) out["ell"] = g.ell;
    out["pins"] = pins;
    return out.dump();
}

} // namespace mbfd
