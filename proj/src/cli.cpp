#include "mbfd/cli.hpp"

#include "mbfd/chains.hpp"
#include "mbfd/exact_solver.hpp"
#include "mbfd/gadgets.hpp"
#include "mbfd/graph_io.hpp"
#include "mbfd/mbsfd.hpp"
#include "mbfd/sat_reduction.hpp"
#include "mbfd/sggf.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <ostream>
#include <sstream>

namespace mbfd {

ComplexityClass classify(KBound k, KBound l) {
    long long sum = (k.is_infinite() || l.is_infinite()) ? 4
                                                         : static_cast<long long>(k.value()) +
                                                               static_cast<long long>(l.value());
    return sum >= 4 ? ComplexityClass::NpComplete : ComplexityClass::Polynomial;
}

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << content;
}

json kbound_json(const KBound& b) {
    if (b.is_infinite()) return "inf";
    return b.value();
}

json edge_json(const Edge& e) { return json::array({e.lo(), e.hi()}); }

json labels_json(const Decomposition& d) {
    json matching = json::array();
    json forest = json::array();
    for (int id = 0; id < d.graph.edge_count(); ++id)
        (d.label(id) == EdgeLabel::Matching ? matching : forest).push_back(edge_json(d.graph.edge(id)));
    return json{{"matching", matching}, {"forest", forest}};
}

json verdict_json(const Verdict& v) {
    json violations = json::array();
    for (const Violation& viol : v.violations) {
        json j;
        j["kind"] = violation_kind_name(viol.kind);
        j["side"] = viol.side == EdgeLabel::Matching ? "matching" : "forest";
        if (viol.vertex >= 0) j["vertex"] = viol.vertex;
        if (viol.size >= 0) j["size"] = viol.size;
        if (viol.bound >= 0) j["bound"] = viol.bound;
        violations.push_back(j);
    }
    return json{{"valid", v.valid}, {"violations", violations}};
}

struct BoundOption {
    std::string text = "";
    bool present() const { return !text.empty(); }
    KBound value() const { return parse_kbound(text); }
};

int run_gadget_build(GadgetKind kind, int k, std::optional<int> ell, const std::string& out_path,
                     std::ostream& out) {
    PinnedGadget g = build_gadget(kind, k, ell);
    if (!out_path.empty()) {
        write_file(out_path, serialize_graph(g.graph));
        write_file(out_path + ".pins.json", serialize_pins(g));
    }
    json pins;
    for (const auto& [name, v] : g.vertex_pins) pins[name] = v;
    json report{{"kind", gadget_kind_name(kind)},
                {"k", k},
                {"vertices", g.graph.vertex_count()},
                {"edges", g.graph.edge_count()},
                {"pins", pins}};
    if (kind == GadgetKind::FForcer) report["ell"] = *ell;
    if (out_path.empty()) report["graph"] = serialize_graph(g.graph);
    out << report.dump() << "\n";
    return 0;
}

int run_gadget_verify(GadgetKind kind, int k, std::optional<int> ell, std::size_t max_edges,
                      std::ostream& out) {
    PinnedGadget g = build_gadget(kind, k, ell);
    SearchLimits limits;
    limits.max_edges = max_edges;
    GadgetReport r = verify_gadget(g, limits);
    json report{{"kind", gadget_kind_name(kind)}, {"k", k}};
    if (kind == GadgetKind::FForcer) report["ell"] = *ell;
    switch (r.status) {
    case VerifyStatus::Pass: {
        report["status"] = "pass";
        report["decompositions"] = r.decomposition_count;
        if (kind == GadgetKind::Or) {
            json cores = json::array();
            for (const auto& core : r.core_labelings) {
                json one = json::array();
                for (EdgeLabel lab : core) one.push_back(lab == EdgeLabel::Forest ? "F" : "M");
                cores.push_back(one);
            }
            report["core_labelings"] = cores;
        }
        out << report.dump() << "\n";
        return 0;
    }
    case VerifyStatus::Fail: {
        report["status"] = "fail";
        report["failing_clause"] = r.failing_clause;
        if (!r.missing_pattern.empty()) report["missing_pattern"] = r.missing_pattern;
        if (r.witness) report["witness"] = labels_json(*r.witness);
        out << report.dump() << "\n";
        return 1;
    }
    case VerifyStatus::SizeCap: {
        report["status"] = "size_cap";
        report["edges"] = r.edge_count;
        report["cap"] = r.cap;
        out << report.dump() << "\n";
        return 2;
    }
    }
    return 2;
}

} // namespace

CommandOutcome dispatch(const std::vector<std::string>& argv, std::ostream& out,
                        std::ostream& err) {
    CLI::App app{"matching + bounded-forest decomposition toolkit"};
    app.require_subcommand(1);

    // shared option storage
    std::string kind_name;
    int k_int = 0;
    int ell_int = -1;
    std::size_t max_edges = 64;
    std::string out_path;
    std::string k_text, l_text;
    std::string spec_kind = "linear";
    std::string path1, path2;
    std::uint64_t seed = 0;
    int count = 1;
    int vars = 6;
    int chain_len = 1;
    std::string left_end = "x3", right_end = "x3";
    bool cycle = false, anchored_cycle = false;

    int exit_code = 0;
    auto act = [&](std::function<int()> fn) {
        return [&, fn]() { exit_code = fn(); };
    };

    // gadget build|verify
    auto* gadget = app.add_subcommand("gadget", "construct and check the pinned gadgets");
    gadget->require_subcommand(1);
    auto add_gadget_opts = [&](CLI::App* cmd) {
        cmd->add_option("--kind", kind_name, "m_forcer|f_forcer|or|rejector|variable")->required();
        cmd->add_option("--k", k_int, "path length bound (k >= 3)")->required();
        cmd->add_option("--ell", ell_int, "forced path length (f_forcer only)");
    };
    auto* gbuild = gadget->add_subcommand("build", "emit a gadget graph and its pin sidecar");
    add_gadget_opts(gbuild);
    gbuild->add_option("--out", out_path, "write the graph file here (pins beside it)");
    gbuild->callback(act([&]() {
        auto kind = gadget_kind_from_name(kind_name);
        if (!kind) throw CLI::ValidationError("--kind", "unknown gadget kind '" + kind_name + "'");
        std::optional<int> ell = ell_int >= 0 ? std::optional<int>(ell_int) : std::nullopt;
        return run_gadget_build(*kind, k_int, ell, out_path, out);
    }));
    auto* gverify = gadget->add_subcommand("verify", "exhaustively verify a gadget's clauses");
    add_gadget_opts(gverify);
    gverify->add_option("--max-edges", max_edges, "exhaustive search cap (default 64)");
    gverify->callback(act([&]() {
        auto kind = gadget_kind_from_name(kind_name);
        if (!kind) throw CLI::ValidationError("--kind", "unknown gadget kind '" + kind_name + "'");
        std::optional<int> ell = ell_int >= 0 ? std::optional<int>(ell_int) : std::nullopt;
        return run_gadget_verify(*kind, k_int, ell, max_edges, out);
    }));

    // reduce sat2blfd
    auto* reduce = app.add_subcommand("reduce", "compile instances between problems");
    reduce->require_subcommand(1);
    auto* sat2blfd = reduce->add_subcommand(
        "sat2blfd", "clause-variable instance to a matching+linear-forest instance");
    sat2blfd->add_option("--k", k_int, "path length bound (k >= 3)")->required();
    sat2blfd->add_option("cnf", path1, "DIMACS CNF input")->required();
    sat2blfd->add_option("--out", out_path, "write the graph file here");
    sat2blfd->callback(act([&]() {
        CnfInstance inst = load_instance(read_file(path1));
        auto [g, pins] = build_reduction_graph(inst, k_int);
        if (!out_path.empty()) write_file(out_path, serialize_graph(g));
        json report{{"variables", inst.variable_count},
                    {"clauses", inst.clauses.size()},
                    {"k", k_int},
                    {"vertices", g.vertex_count()},
                    {"edges", g.edge_count()}};
        json cv = json::array();
        for (const auto& cp : pins.clauses) cv.push_back(cp.clause_vertex);
        report["clause_vertices"] = cv;
        if (out_path.empty()) report["graph"] = serialize_graph(g);
        out << report.dump() << "\n";
        return 0;
    }));

    // sat brute|assign2dec|dec2assign
    auto* sat = app.add_subcommand("sat", "restricted-shape SAT utilities");
    sat->require_subcommand(1);
    auto* brute = sat->add_subcommand("brute", "exhaustive satisfiability check");
    brute->add_option("cnf", path1, "DIMACS CNF input")->required();
    brute->callback(act([&]() {
        CnfInstance inst = load_instance(read_file(path1));
        auto phi = brute_force_sat(inst);
        json report{{"satisfiable", phi.has_value()}};
        if (phi) {
            json a;
            for (int v = 0; v < inst.variable_count; ++v)
                a[std::to_string(v + 1)] = (*phi)[static_cast<std::size_t>(v)];
            report["assignment"] = a;
        }
        out << report.dump() << "\n";
        return phi ? 0 : 1;
    }));
    auto* a2d = sat->add_subcommand("assign2dec", "build a certificate from an assignment");
    a2d->add_option("--k", k_int, "path length bound (k >= 3)")->required();
    a2d->add_option("cnf", path1, "DIMACS CNF input")->required();
    a2d->add_option("assignment", path2, "assignment JSON")->required();
    a2d->add_option("--out", out_path, "write the certificate here");
    a2d->callback(act([&]() {
        CnfInstance inst = load_instance(read_file(path1));
        json aj = json::parse(read_file(path2));
        Assignment phi(static_cast<std::size_t>(inst.variable_count), false);
        for (const auto& [key, value] : aj.at("assignment").items())
            phi.at(static_cast<std::size_t>(std::stoi(key) - 1)) = value.get<bool>();
        Decomposition d = assignment_to_decomposition(inst, k_int, phi);
        std::string cert = serialize_certificate(d);
        if (!out_path.empty())
            write_file(out_path, cert);
        else
            out << cert << "\n";
        return 0;
    }));
    auto* d2a = sat->add_subcommand("dec2assign", "read an assignment off a certificate");
    d2a->add_option("--k", k_int, "path length bound (k >= 3)")->required();
    d2a->add_option("cnf", path1, "DIMACS CNF input")->required();
    d2a->add_option("certificate", path2, "certificate JSON")->required();
    d2a->callback(act([&]() {
        CnfInstance inst = load_instance(read_file(path1));
        auto [g, pins] = build_reduction_graph(inst, k_int);
        Decomposition d = parse_certificate(g, read_file(path2));
        Assignment phi = decomposition_to_assignment(inst, pins, d);
        json a;
        for (int v = 0; v < inst.variable_count; ++v)
            a[std::to_string(v + 1)] = phi[static_cast<std::size_t>(v)];
        out << json{{"assignment", a}}.dump() << "\n";
        return 0;
    }));

    // gen sat33 (seeded instance generator; supports reproducing the pipeline runs)
    auto* gen = app.add_subcommand("gen", "seeded instance generators");
    gen->require_subcommand(1);
    auto* gsat = gen->add_subcommand("sat33", "random instance of the restricted SAT shape");
    gsat->add_option("--vars", vars, "variable count (>= 2)")->required();
    gsat->add_option("--seed", seed, "PRNG seed");
    gsat->add_option("--count", count, "number of instances");
    gsat->callback(act([&]() {
        for (int i = 0; i < count; ++i)
            out << serialize_instance(generate_random_instance(vars, seed + static_cast<std::uint64_t>(i)));
        return 0;
    }));

    // solve exact|mbsfd|sggf
    auto* solve = app.add_subcommand("solve", "decide decomposability");
    solve->require_subcommand(1);
    auto* sexact = solve->add_subcommand("exact", "exhaustive backtracking solver");
    sexact->add_option("--k", k_text, "forest bound (int or 'inf')")->required();
    sexact->add_option("--l", l_text, "second bound for linear specs (default 1)");
    sexact->add_option("--spec", spec_kind, "linear|star (default linear)");
    sexact->add_option("--max-edges", max_edges, "search cap (default 64)");
    sexact->add_option("graph", path1, "graph file")->required();
    sexact->callback(act([&]() {
        Graph g = parse_graph(read_file(path1));
        DecompSpec spec;
        if (spec_kind == "linear")
            spec = DecompSpec::linear(parse_kbound(k_text),
                                      l_text.empty() ? KBound::finite(1) : parse_kbound(l_text));
        else if (spec_kind == "star")
            spec = DecompSpec::star(parse_kbound(k_text));
        else
            throw CLI::ValidationError("--spec", "expected linear or star");
        SearchLimits limits;
        limits.max_edges = max_edges;
        auto d = solve_exact(g, spec, limits);
        if (!d) {
            out << json{{"decomposable", false}}.dump() << "\n";
            return 1;
        }
        out << json{{"decomposable", true}, {"certificate", json::parse(serialize_certificate(*d))}}
                   .dump()
            << "\n";
        return 0;
    }));
    auto* smbsfd = solve->add_subcommand("mbsfd", "matching + bounded star forest solver");
    smbsfd->add_option("--k", k_text, "star size bound (int or 'inf')")->required();
    smbsfd->add_option("graph", path1, "graph file")->required();
    smbsfd->callback(act([&]() {
        Graph g = parse_graph(read_file(path1));
        MbsfdResult r = solve_mbsfd(g, parse_kbound(k_text));
        const char* method = r.method == MbsfdMethod::DegreeShortCircuit ? "degree_short_circuit"
                             : r.method == MbsfdMethod::MatchingPair     ? "matching_pair"
                                                                         : "pipeline";
        if (!r.yes()) {
            out << json{{"decomposable", false}, {"method", method}}.dump() << "\n";
            return 1;
        }
        out << json{{"decomposable", true},
                    {"method", method},
                    {"certificate", json::parse(serialize_certificate(*r.decomposition))}}
                   .dump()
            << "\n";
        return 0;
    }));
    auto* ssggf = solve->add_subcommand("sggf", "small-gap degree-set solver");
    ssggf->add_option("instance", path1, "instance file (graph lines plus 'a <v> <members...>')")
        ->required();
    ssggf->callback(act([&]() {
        SggfInstance inst = parse_sggf_instance(read_file(path1));
        auto s = solve_sggf(inst);
        if (!s) {
            out << json{{"feasible", false}}.dump() << "\n";
            return 1;
        }
        json edges = json::array();
        for (int id : *s) edges.push_back(edge_json(inst.graph.edge(id)));
        out << json{{"feasible", true}, {"selected_edge_ids", *s}, {"selected_edges", edges}}.dump()
            << "\n";
        return 0;
    }));

    // verify cert
    auto* verify = app.add_subcommand("verify", "check certificates");
    verify->require_subcommand(1);
    auto* vcert = verify->add_subcommand("cert", "validate a decomposition certificate");
    vcert->add_option("graph", path1, "graph file")->required();
    vcert->add_option("certificate", path2, "certificate JSON")->required();
    vcert->callback(act([&]() {
        Graph g = parse_graph(read_file(path1));
        Decomposition d = parse_certificate(g, read_file(path2));
        Verdict v = validate_decomposition(d);
        out << verdict_json(v).dump() << "\n";
        return v.valid ? 0 : 1;
    }));

    // classify
    auto* cls = app.add_subcommand("classify", "complexity of the (k,l) decomposition problem");
    cls->add_option("--k", k_text, "first bound (int or 'inf')")->required();
    cls->add_option("--l", l_text, "second bound (int or 'inf')")->required();
    cls->callback(act([&]() {
        ComplexityClass c = classify(parse_kbound(k_text), parse_kbound(l_text));
        out << json{{"k", kbound_json(parse_kbound(k_text))},
                    {"l", kbound_json(parse_kbound(l_text))},
                    {"class", c == ComplexityClass::NpComplete ? "np_complete" : "polynomial"}}
                   .dump()
            << "\n";
        return 0;
    }));

    // profile chain
    auto* profile = app.add_subcommand("profile", "inspect pipeline internals");
    profile->require_subcommand(1);
    auto* pchain = profile->add_subcommand("chain", "achievable matched-end counts of a chain");
    pchain->add_option("--k", k_text, "star size bound (int or 'inf')")->required();
    pchain->add_option("--len", chain_len, "chain length in edges")->required();
    pchain->add_option("--left", left_end, "left end class: x3|x1 (paths)");
    pchain->add_option("--right", right_end, "right end class: x3|x1 (paths)");
    pchain->add_flag("--cycle", cycle, "the chain is a cycle");
    pchain->add_flag("--anchored", anchored_cycle, "cycle passes through a high-degree vertex");
    pchain->callback(act([&]() {
        Chain chain;
        chain.kind = cycle ? ChainKind::Cycle : ChainKind::Path;
        chain.anchored = anchored_cycle;
        chain.edge_ids.resize(static_cast<std::size_t>(chain_len));
        for (int i = 0; i < chain_len; ++i) chain.edge_ids[static_cast<std::size_t>(i)] = i;
        for (int i = 0; i <= chain_len; ++i) chain.vertices.push_back(i);
        if (cycle) chain.vertices.pop_back();
        auto parse_end = [&](const std::string& s) {
            if (s == "x3") return EndClass::HighDegree;
            if (s == "x1") return EndClass::Leaf;
            throw CLI::ValidationError("--left/--right", "expected x3 or x1");
        };
        chain.end_a = parse_end(left_end);
        chain.end_b = parse_end(right_end);
        ChainProfile p = chain_profile(chain, parse_kbound(k_text));
        json achievable = json::array();
        for (int a : p.achievable) achievable.push_back(a);
        json witnesses = json::array();
        for (const auto& [pattern, labels] : p.witnesses) {
            json pat = json::array();
            for (SlotState s : pattern) pat.push_back(s == SlotState::InMatching ? "M" : "F");
            json lab = json::array();
            for (EdgeLabel l : labels) lab.push_back(l == EdgeLabel::Forest ? "F" : "M");
            witnesses.push_back(json{{"pattern", pat}, {"labels", lab}});
        }
        out << json{{"achievable", achievable}, {"witnesses", witnesses}}.dump() << "\n";
        return 0;
    }));

    std::vector<std::string> args = argv;
    std::vector<char*> cargv;
    std::string prog = "mbfd";
    cargv.push_back(prog.data());
    for (std::string& a : args) cargv.push_back(a.data());
    try {
        app.parse(static_cast<int>(cargv.size()), cargv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) { // --help
            out << app.help();
            return {0};
        }
        err << "error: " << e.what() << "\n";
        return {2};
    } catch (const SizeCapError& e) {
        err << "error: " << e.what() << "\n";
        return {2};
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return {2};
    }
    return {exit_code};
}

} // namespace mbfd
