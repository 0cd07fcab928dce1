#include "mbfd/sggf.hpp"

#include <algorithm>
#include <sstream>

namespace mbfd {

GapSet make_gap_set(std::vector<int> members) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    for (int x : members)
        if (x < 0) throw std::invalid_argument("gap set members must be non-negative");
    return members;
}

bool is_small_gap(const GapSet& a) {
    for (std::size_t i = 0; i + 1 < a.size(); ++i)
        if (a[i + 1] - a[i] > 2) return false;
    return true;
}

bool gap_set_contains(const GapSet& a, int x) {
    return std::binary_search(a.begin(), a.end(), x);
}

SggfInstance parse_sggf_instance(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    long long n = -1;
    SggfInstance inst;
    std::vector<bool> have_set;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;
        if (tag[0] == '#') continue;
        auto fail = [&](const std::string& what) -> void {
            throw std::invalid_argument("line " + std::to_string(line_no) + ": " + what);
        };
        if (tag == "g") {
            if (n >= 0) fail("duplicate header");
            if (!(ls >> n) || n < 0) fail("bad vertex count");
            inst.graph = MultiGraph(static_cast<int>(n));
            inst.sets.assign(static_cast<std::size_t>(n), {});
            have_set.assign(static_cast<std::size_t>(n), false);
        } else if (tag == "e") {
            if (n < 0) fail("edge before header");
            long long u, v;
            if (!(ls >> u >> v)) fail("expected 'e <u> <v>'");
            if (u < 0 || v < 0 || u >= n || v >= n) fail("vertex id out of range");
            if (u == v) fail("self-loop");
            inst.graph.add_edge(static_cast<VertexId>(u), static_cast<VertexId>(v));
        } else if (tag == "a") {
            if (n < 0) fail("set line before header");
            long long v;
            if (!(ls >> v) || v < 0 || v >= n) fail("bad vertex id in 'a' line");
            std::vector<int> members;
            long long x;
            while (ls >> x) {
                if (x < 0) fail("negative set member");
                members.push_back(static_cast<int>(x));
            }
            if (have_set[static_cast<std::size_t>(v)]) fail("duplicate 'a' line for vertex");
            have_set[static_cast<std::size_t>(v)] = true;
            inst.sets[static_cast<std::size_t>(v)] = make_gap_set(std::move(members));
        } else {
            fail("unknown line tag '" + tag + "'");
        }
    }
    if (n < 0) throw std::invalid_argument("missing 'g <n>' header");
    for (int v = 0; v < static_cast<int>(n); ++v) {
        if (!have_set[static_cast<std::size_t>(v)])
            throw std::invalid_argument("missing 'a' line for vertex " + std::to_string(v));
        if (inst.sets[static_cast<std::size_t>(v)].empty())
            throw std::invalid_argument("empty set for vertex " + std::to_string(v));
    }
    return inst;
}

std::string serialize_sggf_instance(const SggfInstance& inst) {
    std::ostringstream out;
    out << "g " << inst.graph.vertex_count() << "\n";
    for (const Edge& e : inst.graph.edges()) out << "e " << e.lo() << " " << e.hi() << "\n";
    for (int v = 0; v < inst.graph.vertex_count(); ++v) {
        out << "a " << v;
        for (int x : inst.sets[static_cast<std::size_t>(v)]) out << " " << x;
        out << "\n";
    }
    return out.str();
}

std::optional<std::vector<int>> solve_sggf_oracle(const SggfInstance& inst) {
    int m = inst.graph.edge_count();
    if (m > 25) throw std::invalid_argument("oracle is capped at 25 edges");
    int n = inst.graph.vertex_count();
    std::vector<int> deg(static_cast<std::size_t>(n));
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
        std::fill(deg.begin(), deg.end(), 0);
        for (int id = 0; id < m; ++id)
            if ((mask >> id) & 1) {
                const Edge& e = inst.graph.edge(id);
                deg[static_cast<std::size_t>(e.lo())]++;
                deg[static_cast<std::size_t>(e.hi())]++;
            }
        bool ok = true;
        for (int v = 0; v < n && ok; ++v)
            ok = gap_set_contains(inst.sets[static_cast<std::size_t>(v)],
                                  deg[static_cast<std::size_t>(v)]);
        if (ok) {
            std::vector<int> s;
            for (int id = 0; id < m; ++id)
                if ((mask >> id) & 1) s.push_back(id);
            return s;
        }
    }
    return std::nullopt;
}

namespace {

bool is_interval(const GapSet& a) {
    return a.empty() || a.back() - a.front() == static_cast<int>(a.size()) - 1;
}

bool is_parity_progression(const GapSet& a) {
    for (std::size_t i = 0; i + 1 < a.size(); ++i)
        if (a[i + 1] - a[i] != 2) return false;
    return true;
}

// Piece realizing the outward counts [lo..hi] at degree d: (d - hi) required
// "eaters" plus (hi - lo) optional pads, each adjacent to every stub. A stub
// not matched outward must be matched onto an internal node, so feasibility
// is exactly d - hi <= (inward count) <= d - lo.
GadgetPiece interval_piece(int d, int lo, int hi) {
    GadgetPiece p;
    p.stubs = d;
    p.required = d - hi;
    p.optional_nodes = hi - lo;
    for (int s = 0; s < d; ++s)
        for (int i = 0; i < p.required + p.optional_nodes; ++i) p.edges.emplace_back(s, d + i);
    for (int t = lo; t <= hi; ++t) p.realizes.push_back(t);
    return p;
}

// Piece realizing {lo, lo+2, ..., hi}: (d - hi) eaters plus (hi - lo)/2
// required pad pairs joined by an internal edge. A pair absorbs zero or two
// inward stubs, never one.
GadgetPiece progression_piece(int d, int lo, int hi) {
    GadgetPiece p;
    p.stubs = d;
    p.required = (d - hi) + (hi - lo);
    p.optional_nodes = 0;
    for (int s = 0; s < d; ++s)
        for (int i = 0; i < p.required; ++i) p.edges.emplace_back(s, d + i);
    int pair_base = d + (d - hi);
    for (int j = 0; j < (hi - lo) / 2; ++j)
        p.edges.emplace_back(pair_base + 2 * j, pair_base + 2 * j + 1);
    for (int t = lo; t <= hi; t += 2) p.realizes.push_back(t);
    return p;
}

VertexGadget build_vertexgadget_impl(int degree, const GapSet& a) {
    VertexGadget g;
    g.degree = degree;
    g.target = a;
    if (is_interval(a)) {
        g.pieces.push_back(interval_piece(degree, a.front(), a.back()));
    } else if (is_parity_progression(a)) {
        g.pieces.push_back(progression_piece(degree, a.front(), a.back()));
    } else {
        // one interval piece per maximal run
        std::size_t i = 0;
        while (i < a.size()) {
            std::size_t j = i;
            while (j + 1 < a.size() && a[j + 1] == a[j] + 1) ++j;
            g.pieces.push_back(interval_piece(degree, a[i], a[j]));
            i = j + 1;
        }
    }
    return g;
}

} // namespace

VertexGadget build_vertex_gadget(int degree, const GapSet& a) {
    if (degree < 0) throw std::invalid_argument("negative degree");
    if (a.empty()) throw std::invalid_argument("empty gap set");
    if (!is_small_gap(a)) throw std::invalid_argument("set is not small-gap");
    if (a.back() > degree || a.front() < 0)
        throw std::invalid_argument("gap set members must lie in [0, degree]");
    return build_vertexgadget_impl(degree, a);
}

namespace {

// Exhaustive cover search on one piece: must cover all of `need` using piece
// edges, no vertex twice, stubs in `removed` unusable. Independent of the
// blossom engine on purpose.
bool cover_search(const GadgetPiece& p, const std::vector<std::vector<int>>& adj,
                  std::vector<bool>& used, const std::vector<bool>& removed,
                  const std::vector<bool>& need, int from) {
    int nodes = p.node_count();
    int v = from;
    while (v < nodes && (!need[static_cast<std::size_t>(v)] || used[static_cast<std::size_t>(v)]))
        ++v;
    if (v == nodes) return true;
    used[static_cast<std::size_t>(v)] = true;
    for (int w : adj[static_cast<std::size_t>(v)]) {
        if (used[static_cast<std::size_t>(w)] || removed[static_cast<std::size_t>(w)]) continue;
        used[static_cast<std::size_t>(w)] = true;
        if (cover_search(p, adj, used, removed, need, v + 1)) {
            used[static_cast<std::size_t>(w)] = false;
            used[static_cast<std::size_t>(v)] = false;
            return true;
        }
        used[static_cast<std::size_t>(w)] = false;
    }
    used[static_cast<std::size_t>(v)] = false;
    return false;
}

bool piece_feasible(const GadgetPiece& p, unsigned outward_mask) {
    int nodes = p.node_count();
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(nodes));
    for (const Edge& e : p.edges) {
        adj[static_cast<std::size_t>(e.lo())].push_back(e.hi());
        adj[static_cast<std::size_t>(e.hi())].push_back(e.lo());
    }
    std::vector<bool> removed(static_cast<std::size_t>(nodes), false);
    std::vector<bool> need(static_cast<std::size_t>(nodes), false);
    for (int s = 0; s < p.stubs; ++s) {
        if ((outward_mask >> s) & 1)
            removed[static_cast<std::size_t>(s)] = true;
        else
            need[static_cast<std::size_t>(s)] = true;
    }
    for (int r = 0; r < p.required; ++r) need[static_cast<std::size_t>(p.stubs + r)] = true;
    std::vector<bool> used(static_cast<std::size_t>(nodes), false);
    return cover_search(p, adj, used, removed, need, 0);
}

} // namespace

bool validate_vertex_gadget(const VertexGadget& g, std::string* why) {
    GapSet seen;
    for (const GadgetPiece& p : g.pieces) {
        if (p.stubs != g.degree) {
            if (why) *why = "piece stub count differs from the vertex degree";
            return false;
        }
        for (unsigned mask = 0; mask < (1u << g.degree); ++mask) {
            int t = __builtin_popcount(mask);
            bool want = gap_set_contains(p.realizes, t);
            bool got = piece_feasible(p, mask);
            if (want != got) {
                if (why)
                    *why = "piece claims outward count " + std::to_string(t) +
                           (want ? " feasible" : " infeasible") + " but the matching check disagrees";
                return false;
            }
        }
        for (int t : p.realizes) seen.push_back(t);
    }
    seen = make_gap_set(std::move(seen));
    if (seen != g.target) {
        if (why) *why = "union of piece sets differs from the target set";
        return false;
    }
    return true;
}

namespace {

struct CompiledVertex {
    VertexGadget gadget;
    std::vector<int> stub_nodes; // global node id per incidence, in edge order
};

// Builds the doubled matching graph for one piece choice per vertex and asks
// the blossom engine for a perfect matching. Returns the selected edge set.
std::optional<std::vector<int>> try_combo(const SggfInstance& inst,
                                          const std::vector<CompiledVertex>& verts,
                                          const std::vector<int>& choice) {
    int n = inst.graph.vertex_count();
    int m = inst.graph.edge_count();

    // Side-A layout: per edge two bar nodes (2*i, 2*i+1); internals after.
    int next = 2 * m;
    std::vector<int> internal_base(static_cast<std::size_t>(n));
    std::vector<const GadgetPiece*> piece(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        piece[static_cast<std::size_t>(v)] =
            &verts[static_cast<std::size_t>(v)].gadget.pieces[static_cast<std::size_t>(
                choice[static_cast<std::size_t>(v)])];
        internal_base[static_cast<std::size_t>(v)] = next;
        next += piece[static_cast<std::size_t>(v)]->required +
                piece[static_cast<std::size_t>(v)]->optional_nodes;
    }
    int side = next;
    MultiGraph gadget_graph(2 * side);

    auto add_both = [&](int a, int b) {
        gadget_graph.add_edge(a, b);
        gadget_graph.add_edge(side + a, side + b);
    };

    std::vector<int> incidence_seen(static_cast<std::size_t>(n), 0);
    std::vector<std::vector<int>> stub_global(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v)
        stub_global[static_cast<std::size_t>(v)].resize(
            static_cast<std::size_t>(inst.graph.degree(v)));
    for (int i = 0; i < m; ++i) {
        const Edge& e = inst.graph.edge(i);
        add_both(2 * i, 2 * i + 1); // the stub pair of the original edge
        for (VertexId v : {e.lo(), e.hi()}) {
            int slot = incidence_seen[static_cast<std::size_t>(v)]++;
            stub_global[static_cast<std::size_t>(v)][static_cast<std::size_t>(slot)] =
                v == e.lo() ? 2 * i : 2 * i + 1;
        }
    }
    for (int v = 0; v < n; ++v) {
        const GadgetPiece& p = *piece[static_cast<std::size_t>(v)];
        auto node = [&](int local) {
            return local < p.stubs
                       ? stub_global[static_cast<std::size_t>(v)][static_cast<std::size_t>(local)]
                       : internal_base[static_cast<std::size_t>(v)] + (local - p.stubs);
        };
        for (const Edge& e : p.edges) add_both(node(e.lo()), node(e.hi()));
        // optional internals may stay exposed: tie them to their twin
        for (int o = 0; o < p.optional_nodes; ++o) {
            int a = internal_base[static_cast<std::size_t>(v)] + p.required + o;
            gadget_graph.add_edge(a, side + a);
        }
    }

    MatchingResult mm = max_matching(gadget_graph);
    if (2 * mm.size() != gadget_graph.vertex_count()) return std::nullopt;

    std::vector<int> s;
    for (int i = 0; i < m; ++i)
        if (mm.mate[static_cast<std::size_t>(2 * i)] == 2 * i + 1) s.push_back(i);
    return s;
}

} // namespace

std::optional<std::vector<int>> solve_sggf(const SggfInstance& inst) {
    int n = inst.graph.vertex_count();
    std::vector<CompiledVertex> verts(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        const GapSet& a = inst.sets[static_cast<std::size_t>(v)];
        if (!is_small_gap(a)) throw std::invalid_argument("set is not small-gap");
        GapSet clamped;
        for (int x : a)
            if (x <= inst.graph.degree(v)) clamped.push_back(x);
        if (clamped.empty()) return std::nullopt; // degree can never reach the set
        verts[static_cast<std::size_t>(v)].gadget =
            build_vertexgadget_impl(inst.graph.degree(v), clamped);
    }

    // Branch over piece alternatives (only multi-run sets have more than one).
    std::vector<int> choice(static_cast<std::size_t>(n), 0);
    std::optional<std::vector<int>> result;
    auto descend = [&](auto&& self, int v) -> bool {
        if (v == n) {
            result = try_combo(inst, verts, choice);
            return result.has_value();
        }
        int count = static_cast<int>(verts[static_cast<std::size_t>(v)].gadget.pieces.size());
        for (int c = 0; c < count; ++c) {
            choice[static_cast<std::size_t>(v)] = c;
            if (self(self, v + 1)) return true;
        }
        return false;
    };
    if (!descend(descend, 0)) return std::nullopt;

    // post-check against the original sets
    std::vector<int> deg(static_cast<std::size_t>(n), 0);
    for (int id : *result) {
        const Edge& e = inst.graph.edge(id);
        deg[static_cast<std::size_t>(e.lo())]++;
        deg[static_cast<std::size_t>(e.hi())]++;
    }
    for (int v = 0; v < n; ++v)
        if (!gap_set_contains(inst.sets[static_cast<std::size_t>(v)],
                              deg[static_cast<std::size_t>(v)]))
            throw std::logic_error("gadget reduction returned an infeasible subset");
    return result;
}

} // namespace mbfd
