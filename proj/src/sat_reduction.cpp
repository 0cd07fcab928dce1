#include "mbfd/sat_reduction.hpp"

#include "mbfd/exact_solver.hpp"

#include <algorithm>
#include <array>
#include <istream>
#include <map>
#include <mutex>
#include <sstream>

namespace mbfd {

int CnfInstance::slot_of(int var, int clause) const {
    const Occurrences& occ = occurrence[static_cast<std::size_t>(var)];
    if (occ.positive_first == clause) return 0;
    if (occ.positive_second == clause) return 1;
    if (occ.negative == clause) return 2;
    throw std::invalid_argument("variable does not occur in clause");
}

CnfInstance make_instance(int variable_count, std::vector<std::vector<Literal>> clauses) {
    CnfInstance inst;
    inst.variable_count = variable_count;
    inst.clauses = std::move(clauses);
    inst.occurrence.assign(static_cast<std::size_t>(variable_count), {});

    for (std::size_t ci = 0; ci < inst.clauses.size(); ++ci) {
        const auto& clause = inst.clauses[ci];
        if (clause.size() < 2 || clause.size() > 3)
            throw CnfShapeError("clause " + std::to_string(ci + 1) + " has size " +
                                std::to_string(clause.size()) + "; sizes 2 and 3 are allowed");
        for (std::size_t i = 0; i < clause.size(); ++i) {
            const Literal& lit = clause[i];
            if (lit.var < 0 || lit.var >= variable_count)
                throw CnfShapeError("clause " + std::to_string(ci + 1) + " uses variable " +
                                    std::to_string(lit.var + 1) + " outside the declared range");
            for (std::size_t j = i + 1; j < clause.size(); ++j)
                if (clause[j].var == lit.var)
                    throw CnfShapeError("clause " + std::to_string(ci + 1) + " mentions variable " +
                                        std::to_string(lit.var + 1) + " twice");
            auto& occ = inst.occurrence[static_cast<std::size_t>(lit.var)];
            if (lit.negated) {
                if (occ.negative >= 0)
                    throw CnfShapeError("variable " + std::to_string(lit.var + 1) +
                                        " occurs negatively more than once");
                occ.negative = static_cast<int>(ci);
            } else {
                if (occ.positive_first < 0)
                    occ.positive_first = static_cast<int>(ci);
                else if (occ.positive_second < 0)
                    occ.positive_second = static_cast<int>(ci);
                else
                    throw CnfShapeError("variable " + std::to_string(lit.var + 1) +
                                        " occurs positively more than twice");
            }
        }
    }
    for (int v = 0; v < variable_count; ++v) {
        const auto& occ = inst.occurrence[static_cast<std::size_t>(v)];
        if (occ.positive_second < 0)
            throw CnfShapeError("variable " + std::to_string(v + 1) +
                                " must occur positively exactly twice");
        if (occ.negative < 0)
            throw CnfShapeError("variable " + std::to_string(v + 1) +
                                " must occur negatively exactly once");
    }
    return inst;
}

CnfInstance load_instance(std::istream& in) {
    std::string line;
    int nvars = -1;
    long long nclauses = -1;
    std::vector<std::vector<Literal>> clauses;
    std::vector<Literal> current;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok == "c") continue;
        if (tok == "p") {
            std::string fmt;
            if (!(ls >> fmt >> nvars >> nclauses) || fmt != "cnf" || nvars < 0)
                throw CnfShapeError("bad DIMACS header");
            continue;
        }
        ls.clear();
        ls.seekg(0);
        long long lit;
        while (ls >> lit) {
            if (lit == 0) {
                clauses.push_back(current);
                current.clear();
            } else {
                int var = static_cast<int>(std::abs(lit)) - 1;
                current.push_back({var, lit < 0});
            }
        }
    }
    if (!current.empty()) clauses.push_back(current);
    if (nvars < 0) throw CnfShapeError("missing DIMACS 'p cnf' header");
    if (nclauses >= 0 && static_cast<long long>(clauses.size()) != nclauses)
        throw CnfShapeError("clause count does not match the header");
    return make_instance(nvars, std::move(clauses));
}

CnfInstance load_instance(const std::string& text) {
    std::istringstream in(text);
    return load_instance(in);
}

std::string serialize_instance(const CnfInstance& inst) {
    std::ostringstream out;
    out << "p cnf " << inst.variable_count << " " << inst.clauses.size() << "\n";
    for (const auto& clause : inst.clauses) {
        for (const Literal& lit : clause) out << (lit.negated ? -(lit.var + 1) : lit.var + 1) << " ";
        out << "0\n";
    }
    return out.str();
}

bool satisfies(const CnfInstance& inst, const Assignment& phi) {
    for (const auto& clause : inst.clauses) {
        bool sat = false;
        for (const Literal& lit : clause)
            if (phi[static_cast<std::size_t>(lit.var)] != lit.negated) {
                sat = true;
                break;
            }
        if (!sat) return false;
    }
    return true;
}

std::optional<Assignment> brute_force_sat(const CnfInstance& inst) {
    if (inst.variable_count > 24)
        throw std::invalid_argument("brute-force oracle is capped at 24 variables");
    int n = inst.variable_count;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        Assignment phi(static_cast<std::size_t>(n));
        for (int v = 0; v < n; ++v) phi[static_cast<std::size_t>(v)] = (mask >> v) & 1;
        if (satisfies(inst, phi)) return phi;
    }
    return std::nullopt;
}

CnfInstance generate_random_instance(int variable_count, std::uint64_t seed) {
    if (variable_count < 2)
        throw std::invalid_argument("the restricted shape needs at least 2 variables");
    // xorshift-style mixer; fixed so outputs are identical everywhere
    std::uint64_t state = seed * 0x9E3779B97F4A7C15ull + 0xD1B54A32D192ED03ull;
    auto next = [&]() {
        state ^= state >> 27;
        state *= 0x3C79AC492BA7B653ull;
        state ^= state >> 33;
        state *= 0x1C69B3F74AC4AE35ull;
        return state ^= state >> 27;
    };
    auto below = [&](int bound) { return static_cast<int>(next() % static_cast<std::uint64_t>(bound)); };

    int n = variable_count;
    for (int attempt = 0; attempt < 10000; ++attempt) {
        // 3t + 2s = 3n literal slots; t must have n's parity
        int t_max = n;
        std::vector<int> t_options;
        for (int t = t_max; t >= 0; t -= 2) t_options.push_back(t);
        int t = t_options[static_cast<std::size_t>(below(static_cast<int>(t_options.size())))];
        int s = (3 * n - 3 * t) / 2;

        std::vector<Literal> pool;
        for (int v = 0; v < n; ++v) {
            pool.push_back({v, false});
            pool.push_back({v, false});
            pool.push_back({v, true});
        }
        for (int i = static_cast<int>(pool.size()) - 1; i > 0; --i)
            std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(below(i + 1))]);

        std::vector<std::vector<Literal>> clauses;
        std::size_t at = 0;
        bool ok = true;
        for (int c = 0; c < t + s && ok; ++c) {
            int size = c < t ? 3 : 2;
            std::vector<Literal> clause(pool.begin() + static_cast<long>(at),
                                        pool.begin() + static_cast<long>(at + static_cast<std::size_t>(size)));
            at += static_cast<std::size_t>(size);
            for (std::size_t i = 0; i < clause.size() && ok; ++i)
                for (std::size_t j = i + 1; j < clause.size(); ++j)
                    if (clause[i].var == clause[j].var) ok = false;
            clauses.push_back(std::move(clause));
        }
        if (!ok) continue;
        return make_instance(n, std::move(clauses));
    }
    throw std::runtime_error("failed to sample an instance of the restricted shape");
}

namespace {

// Remaps a gadget's canonical graph into a global builder at `base`,
// returning nothing; global vertex of local v is base + v.
void splice_block(std::vector<Edge>& edges, const Graph& g, int base) {
    for (const Edge& e : g.edges()) edges.emplace_back(base + e.lo(), base + e.hi());
}

} // namespace

std::pair<Graph, ReductionPinMap> build_reduction_graph(const CnfInstance& inst, int k) {
    if (k < 3) throw std::invalid_argument("the reduction requires k >= 3");
    PinnedGadget var_gadget = build_gadget(GadgetKind::Variable, k);
    PinnedGadget edge_forcer = build_gadget(GadgetKind::FForcer, k, 1);

    ReductionPinMap pins;
    pins.variables.resize(static_cast<std::size_t>(inst.variable_count));
    pins.clauses.resize(inst.clauses.size());

    std::vector<Edge> edges;
    int next = 0;

    // variable gadget blocks
    std::vector<int> var_base(static_cast<std::size_t>(inst.variable_count));
    for (int x = 0; x < inst.variable_count; ++x) {
        var_base[static_cast<std::size_t>(x)] = next;
        splice_block(edges, var_gadget.graph, next);
        auto& vp = pins.variables[static_cast<std::size_t>(x)];
        vp.positive_vertex[0] = next + var_gadget.pin_vertex("p1");
        vp.positive_vertex[1] = next + var_gadget.pin_vertex("p2");
        vp.negative_vertex = next + var_gadget.pin_vertex("n");
        auto shift = [&](const Edge& e) { return Edge(next + e.lo(), next + e.hi()); };
        vp.positive_edge[0] = shift(var_gadget.pin_edge("e1"));
        vp.positive_edge[1] = shift(var_gadget.pin_edge("e2"));
        vp.negative_edge = shift(var_gadget.pin_edge("e"));
        next += var_gadget.graph.vertex_count();
    }

    // clause vertices
    for (std::size_t c = 0; c < inst.clauses.size(); ++c) {
        pins.clauses[c].clause_vertex = next++;
    }

    // connectors, in clause order then literal order
    for (std::size_t c = 0; c < inst.clauses.size(); ++c) {
        VertexId vc = pins.clauses[c].clause_vertex;
        for (const Literal& lit : inst.clauses[c]) {
            const auto& vp = pins.variables[static_cast<std::size_t>(lit.var)];
            int slot = inst.slot_of(lit.var, static_cast<int>(c));
            VertexId input = slot == 2 ? vp.negative_vertex : vp.positive_vertex[slot];
            Edge conn(vc, input);
            edges.push_back(conn);
            pins.clauses[c].connector_edges.push_back(conn);
        }
    }

    // a pendant exactly-1-path forcer on every clause vertex of size 2
    // (the forcer's pin vertex is the clause vertex itself)
    std::vector<int> forcer_base(inst.clauses.size(), -1);
    for (std::size_t c = 0; c < inst.clauses.size(); ++c) {
        if (inst.clauses[c].size() != 2) continue;
        VertexId vc = pins.clauses[c].clause_vertex;
        int base = next;
        forcer_base[c] = base;
        auto remap = [&](VertexId v) -> VertexId { return v == 0 ? vc : base + v - 1; };
        for (const Edge& e : edge_forcer.graph.edges())
            edges.emplace_back(remap(e.lo()), remap(e.hi()));
        Edge pe = edge_forcer.pin_edge("e");
        pins.clauses[c].forcer_pin_edge = Edge(remap(pe.lo()), remap(pe.hi()));
        next += edge_forcer.graph.vertex_count() - 1;
    }

    Graph g(next, edges);

    // edge-id translations for transplanting cached gadget labelings
    for (int x = 0; x < inst.variable_count; ++x) {
        auto& vp = pins.variables[static_cast<std::size_t>(x)];
        int base = var_base[static_cast<std::size_t>(x)];
        vp.gadget_edge_to_global.resize(static_cast<std::size_t>(var_gadget.graph.edge_count()));
        for (int id = 0; id < var_gadget.graph.edge_count(); ++id) {
            const Edge& e = var_gadget.graph.edge(id);
            vp.gadget_edge_to_global[static_cast<std::size_t>(id)] =
                *g.edge_id(base + e.lo(), base + e.hi());
        }
    }
    for (std::size_t c = 0; c < inst.clauses.size(); ++c) {
        if (forcer_base[c] < 0) continue;
        auto& cp = pins.clauses[c];
        VertexId vc = cp.clause_vertex;
        int base = forcer_base[c];
        auto remap = [&](VertexId v) -> VertexId { return v == 0 ? vc : base + v - 1; };
        cp.forcer_edge_to_global.resize(static_cast<std::size_t>(edge_forcer.graph.edge_count()));
        for (int id = 0; id < edge_forcer.graph.edge_count(); ++id) {
            const Edge& e = edge_forcer.graph.edge(id);
            cp.forcer_edge_to_global[static_cast<std::size_t>(id)] =
                *g.edge_id(remap(e.lo()), remap(e.hi()));
        }
    }

    return {std::move(g), std::move(pins)};
}

namespace {

// First enumerated labeling of `gadget` compatible with the given pin-edge
// labels, cached per (kind, k, pattern). The gadget graphs are rigid enough
// that a first-solution search is fast even where full enumeration is not.
std::vector<EdgeLabel> gadget_filling(const PinnedGadget& gadget,
                                      const std::vector<std::pair<std::string, EdgeLabel>>& fixed) {
    static std::mutex cache_mutex;
    static std::map<std::string, std::vector<EdgeLabel>> cache;
    std::string key = gadget_kind_name(gadget.kind) + "/" + std::to_string(gadget.k) + "/" +
                      std::to_string(gadget.ell);
    for (const auto& [name, lab] : fixed) key += "/" + name + (lab == EdgeLabel::Forest ? "F" : "M");
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }

    std::vector<std::optional<EdgeLabel>> forced(
        static_cast<std::size_t>(gadget.graph.edge_count()));
    for (const auto& [name, lab] : fixed)
        forced[static_cast<std::size_t>(gadget.pin_edge_id(name))] = lab;
    SearchLimits wide;
    wide.max_edges = 4096; // first-solution search, not enumeration
    auto dec = solve_exact_constrained(gadget.graph,
                                       DecompSpec::linear(KBound::finite(gadget.k), KBound::finite(1)),
                                       forced, wide);
    if (!dec)
        throw std::logic_error("gadget admits no decomposition for pattern " + key);
    std::lock_guard<std::mutex> lock(cache_mutex);
    return cache.emplace(key, std::move(dec->labels)).first->second;
}

} // namespace

Decomposition assignment_to_decomposition(const CnfInstance& inst, int k, const Assignment& phi) {
    if (static_cast<int>(phi.size()) != inst.variable_count)
        throw std::invalid_argument("assignment arity mismatch");
    auto [g, pins] = build_reduction_graph(inst, k);
    PinnedGadget var_gadget = build_gadget(GadgetKind::Variable, k);
    PinnedGadget edge_forcer = build_gadget(GadgetKind::FForcer, k, 1);

    std::vector<EdgeLabel> labels(static_cast<std::size_t>(g.edge_count()), EdgeLabel::Forest);
    // per variable: the labels of (e1, e2, e), fixed by the clause pass
    const EdgeLabel F = EdgeLabel::Forest;
    const EdgeLabel M = EdgeLabel::Matching;
    std::vector<std::array<EdgeLabel, 3>> boundary(
        static_cast<std::size_t>(inst.variable_count), {M, M, M});

    auto makes_true = [&](int var, std::size_t clause) {
        int slot = inst.slot_of(var, static_cast<int>(clause));
        bool val = phi[static_cast<std::size_t>(var)];
        return slot == 2 ? !val : val;
    };

    for (std::size_t c = 0; c < inst.clauses.size(); ++c) {
        // witness: the lowest-index variable that makes the clause true
        int witness = -1;
        for (const Literal& lit : inst.clauses[c]) {
            if (makes_true(lit.var, c) && (witness < 0 || lit.var < witness)) witness = lit.var;
        }
        if (witness < 0)
            throw std::invalid_argument("assignment does not satisfy clause " + std::to_string(c + 1));
        for (std::size_t i = 0; i < inst.clauses[c].size(); ++i) {
            const Literal& lit = inst.clauses[c][i];
            int slot = inst.slot_of(lit.var, static_cast<int>(c));
            const Edge& conn = pins.clauses[c].connector_edges[i];
            int conn_id = *g.edge_id(conn.lo(), conn.hi());
            const auto& vp = pins.variables[static_cast<std::size_t>(lit.var)];
            Edge input = slot == 2 ? vp.negative_edge : vp.positive_edge[slot];
            int input_id = *g.edge_id(input.lo(), input.hi());
            if (lit.var == witness) {
                labels[static_cast<std::size_t>(conn_id)] = M;
                labels[static_cast<std::size_t>(input_id)] = F;
                boundary[static_cast<std::size_t>(lit.var)][static_cast<std::size_t>(slot)] = F;
            } else {
                labels[static_cast<std::size_t>(conn_id)] = F;
                labels[static_cast<std::size_t>(input_id)] = M;
                boundary[static_cast<std::size_t>(lit.var)][static_cast<std::size_t>(slot)] = M;
            }
        }
    }

    // size-2 clauses: forcer pin edge goes to the forest; interior filled from
    // the cached forcer labeling
    for (std::size_t c = 0; c < inst.clauses.size(); ++c) {
        if (!pins.clauses[c].forcer_pin_edge) continue;
        const auto& fill = gadget_filling(edge_forcer, {{"e", F}});
        for (int id = 0; id < edge_forcer.graph.edge_count(); ++id)
            labels[static_cast<std::size_t>(
                pins.clauses[c].forcer_edge_to_global[static_cast<std::size_t>(id)])] =
                fill[static_cast<std::size_t>(id)];
    }

    // variable gadget interiors from the cached filling for the realized
    // boundary pattern
    for (int x = 0; x < inst.variable_count; ++x) {
        const auto& b = boundary[static_cast<std::size_t>(x)];
        const auto& fill = gadget_filling(
            var_gadget, {{"e1", b[0]}, {"e2", b[1]}, {"e", b[2]}});
        const auto& vp = pins.variables[static_cast<std::size_t>(x)];
        for (int id = 0; id < var_gadget.graph.edge_count(); ++id)
            labels[static_cast<std::size_t>(vp.gadget_edge_to_global[static_cast<std::size_t>(id)])] =
                fill[static_cast<std::size_t>(id)];
    }

    Decomposition d(std::move(g), std::move(labels), DecompSpec::linear(KBound::finite(k)));
    Verdict verdict = validate_decomposition(d);
    if (!verdict.valid)
        throw std::logic_error("constructed labeling failed validation; construction bug");
    return d;
}

Assignment decomposition_to_assignment(const CnfInstance& inst, const ReductionPinMap& pins,
                                       const Decomposition& d) {
    Verdict verdict = validate_decomposition(d);
    if (!verdict.valid) throw std::invalid_argument("decomposition does not validate");

    Assignment phi(static_cast<std::size_t>(inst.variable_count), false);
    for (int x = 0; x < inst.variable_count; ++x) {
        const auto& vp = pins.variables[static_cast<std::size_t>(x)];
        auto lab = [&](const Edge& e) {
            return d.label(*d.graph.edge_id(e.lo(), e.hi()));
        };
        phi[static_cast<std::size_t>(x)] = lab(vp.positive_edge[0]) == EdgeLabel::Forest ||
                                           lab(vp.positive_edge[1]) == EdgeLabel::Forest;
    }
    if (!satisfies(inst, phi))
        throw std::logic_error("recovered assignment does not satisfy the instance");
    return phi;
}

} // namespace mbfd
