#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mbfd/cli.hpp"
#include "mbfd/graph_io.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace mbfd;
using nlohmann::json;

namespace {

struct RunResult {
    int code;
    json report;
    std::string raw_out;
    std::string raw_err;
};

RunResult run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    CommandOutcome outcome = dispatch(args, out, err);
    RunResult r{outcome.exit_code, json(), out.str(), err.str()};
    if (!r.raw_out.empty() && (r.raw_out[0] == '{' || r.raw_out[0] == '[')) {
        auto end = r.raw_out.find('\n');
        r.report = json::parse(r.raw_out.substr(0, end));
    }
    return r;
}

struct TempFile {
    std::string path;
    TempFile(const std::string& name, const std::string& content)
        : path("cli_test_" + name) {
        std::ofstream(path) << content;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

} // namespace

TEST_CASE("classify matches the dichotomy") {
    auto npc = run({"classify", "--k", "3", "--l", "1"});
    CHECK(npc.code == 0);
    CHECK(npc.report["class"] == "np_complete");
    auto poly = run({"classify", "--k", "2", "--l", "1"});
    CHECK(poly.report["class"] == "polynomial");
    auto inf = run({"classify", "--k", "inf", "--l", "1"});
    CHECK(inf.report["class"] == "np_complete");
    auto two_two = run({"classify", "--k", "2", "--l", "2"});
    CHECK(two_two.report["class"] == "np_complete");
}

TEST_CASE("classify grid: polynomial exactly at (1,1), (1,2), (2,1)") {
    CHECK(classify(KBound::finite(1), KBound::finite(1)) == ComplexityClass::Polynomial);
    CHECK(classify(KBound::finite(1), KBound::finite(2)) == ComplexityClass::Polynomial);
    CHECK(classify(KBound::finite(2), KBound::finite(1)) == ComplexityClass::Polynomial);
    for (KBound k : {KBound::finite(1), KBound::finite(2), KBound::finite(3), KBound::finite(4),
                     KBound::finite(9), KBound::infinite()})
        for (KBound l : {KBound::finite(1), KBound::finite(2), KBound::finite(3), KBound::finite(4),
                         KBound::finite(9), KBound::infinite()}) {
            bool poly = !k.is_infinite() && !l.is_infinite() && k.value() + l.value() <= 3;
            CHECK((classify(k, l) == ComplexityClass::Polynomial) == poly);
        }
}

TEST_CASE("gadget verify exits 0 with the four core labelings") {
    auto r = run({"gadget", "verify", "--kind", "or", "--k", "3"});
    CHECK(r.code == 0);
    CHECK(r.report["status"] == "pass");
    CHECK(r.report["core_labelings"].size() == 4);
}

TEST_CASE("gadget verify reports a size cap with exit 2") {
    auto r = run({"gadget", "verify", "--kind", "rejector", "--k", "6"});
    CHECK(r.code == 2);
    CHECK(r.report["status"] == "size_cap");
}

TEST_CASE("gadget build emits a parseable graph and sidecar") {
    auto r = run({"gadget", "build", "--kind", "m_forcer", "--k", "8"});
    CHECK(r.code == 0);
    Graph g = parse_graph(r.report["graph"].get<std::string>());
    CHECK(g.vertex_count() == 10);
    CHECK(r.report["pins"]["v"] == 0);
}

TEST_CASE("gadget build --out writes the graph and the pin sidecar") {
    std::string path = "cli_test_forcer.txt";
    auto r = run({"gadget", "build", "--kind", "or", "--k", "3", "--out", path});
    CHECK(r.code == 0);
    std::ifstream gf(path);
    REQUIRE(gf.good());
    std::stringstream gs;
    gs << gf.rdbuf();
    Graph g = parse_graph(gs.str());
    CHECK(g.vertex_count() == 15);
    std::ifstream pf(path + ".pins.json");
    REQUIRE(pf.good());
    json pins;
    pf >> pins;
    CHECK(pins["kind"] == "or");
    CHECK(pins["pins"]["o"] == 2);
    std::remove(path.c_str());
    std::remove((path + ".pins.json").c_str());
}

TEST_CASE("solve mbsfd on a too-big star exits 1") {
    TempFile graph("k14.txt", "g 5\ne 0 1\ne 0 2\ne 0 3\ne 0 4\n");
    auto r = run({"solve", "mbsfd", "--k", "2", graph.path});
    CHECK(r.code == 1);
    CHECK(r.report["decomposable"] == false);
    CHECK(r.report["method"] == "degree_short_circuit");
}

TEST_CASE("solve mbsfd produces a certificate that verify accepts") {
    TempFile graph("tri.txt", "g 3\ne 0 1\ne 1 2\ne 2 0\n");
    auto r = run({"solve", "mbsfd", "--k", "2", graph.path});
    REQUIRE(r.code == 0);
    TempFile cert("tri.cert.json", r.report["certificate"].dump());
    auto v = run({"verify", "cert", graph.path, cert.path});
    CHECK(v.code == 0);
    CHECK(v.report["valid"] == true);
}

TEST_CASE("verify cert flags a mislabeled edge with the violation kind") {
    TempFile graph("tri2.txt", "g 3\ne 0 1\ne 1 2\ne 2 0\n");
    TempFile cert("bad.cert.json",
                  R"({"spec":{"kind":"linear","k":2,"l":1},)"
                  R"("matching":[[0,1],[1,2]],"forest":[[0,2]]})");
    auto r = run({"verify", "cert", graph.path, cert.path});
    CHECK(r.code == 1);
    CHECK(r.report["valid"] == false);
    CHECK(r.report["violations"][0]["kind"] == "adjacent_matching_edges");
}

TEST_CASE("solve exact respects the spec flags") {
    TempFile graph("k4.txt", "g 4\ne 0 1\ne 0 2\ne 0 3\ne 1 2\ne 1 3\ne 2 3\n");
    auto no = run({"solve", "exact", "--k", "inf", graph.path});
    CHECK(no.code == 1);
    auto star = run({"solve", "exact", "--k", "3", "--spec", "star", graph.path});
    CHECK(star.code == 1);

    TempFile cycle("c4.txt", "g 4\ne 0 1\ne 1 2\ne 2 3\ne 3 0\n");
    auto yes = run({"solve", "exact", "--k", "2", "--l", "2", cycle.path});
    CHECK(yes.code == 0);
    auto matchings = run({"solve", "exact", "--k", "1", "--l", "1", cycle.path});
    CHECK(matchings.code == 0);
}

TEST_CASE("sat pipeline through the command surface") {
    const char* cnf =
        "p cnf 6 7\n-1 2 0\n1 3 0\n1 -2 3 0\n2 -4 5 0\n-3 4 6 0\n4 -5 6 0\n5 -6 0\n";
    TempFile f("sample.cnf", cnf);
    auto brute = run({"sat", "brute", f.path});
    REQUIRE(brute.code == 0);
    CHECK(brute.report["satisfiable"] == true);

    TempFile assign("phi.json", json{{"assignment", brute.report["assignment"]}}.dump());
    auto a2d = run({"sat", "assign2dec", "--k", "3", f.path, assign.path});
    REQUIRE(a2d.code == 0);

    TempFile cert("reduction.cert.json", a2d.raw_out);
    auto d2a = run({"sat", "dec2assign", "--k", "3", f.path, cert.path});
    REQUIRE(d2a.code == 0);
    CHECK(d2a.report.contains("assignment"));

    auto reduce = run({"reduce", "sat2blfd", "--k", "3", f.path});
    CHECK(reduce.code == 0);
    CHECK(reduce.report["clauses"] == 7);
    Graph g = parse_graph(reduce.report["graph"].get<std::string>());
    CHECK(g.max_degree() == 3);
}

TEST_CASE("solve sggf reads the instance format") {
    TempFile inst("inst.sggf", "g 2\ne 0 1\ne 0 1\na 0 2\na 1 0 2\n");
    auto r = run({"solve", "sggf", inst.path});
    CHECK(r.code == 0);
    CHECK(r.report["feasible"] == true);
    CHECK(r.report["selected_edge_ids"].size() == 2);

    TempFile bad("bad.sggf", "g 1\na 0 1\n");
    auto no = run({"solve", "sggf", bad.path});
    CHECK(no.code == 1);
}

TEST_CASE("profile chain exposes the pipeline table") {
    auto r = run({"profile", "chain", "--k", "3", "--len", "3", "--left", "x3", "--right", "x3"});
    CHECK(r.code == 0);
    CHECK(r.report["achievable"] == json::array({0, 2}));
    auto leaf = run({"profile", "chain", "--k", "3", "--len", "2", "--left", "x3", "--right", "x1"});
    CHECK(leaf.report["achievable"] == json::array({0, 1}));
    auto cyc = run({"profile", "chain", "--k", "3", "--len", "3", "--cycle", "--anchored"});
    CHECK(cyc.report["achievable"] == json::array({0}));
}

TEST_CASE("seeded generation is byte-identical across runs") {
    auto a = run({"gen", "sat33", "--vars", "6", "--seed", "42", "--count", "3"});
    auto b = run({"gen", "sat33", "--vars", "6", "--seed", "42", "--count", "3"});
    CHECK(a.code == 0);
    CHECK(a.raw_out == b.raw_out);
    auto c = run({"gen", "sat33", "--vars", "6", "--seed", "43"});
    CHECK(c.raw_out != a.raw_out);
}

TEST_CASE("usage errors exit 2") {
    CHECK(run({"no-such-command"}).code == 2);
    CHECK(run({"gadget", "verify", "--kind", "sideways", "--k", "3"}).code == 2);
    CHECK(run({"solve", "exact", "--k", "0", "missing.txt"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"solve", "mbsfd", "--k", "2", "file-that-does-not-exist.txt"}).code == 2);
}

TEST_CASE("help exits 0") {
    auto r = run({"--help"});
    CHECK(r.code == 0);
    CHECK(r.raw_out.find("solve") != std::string::npos);
}

TEST_CASE("solve exact over the cap exits 2 and names the remedy") {
    std::ostringstream big;
    big << "g 40\n";
    for (int i = 0; i < 39; ++i) big << "e " << i << " " << i + 1 << "\n";
    for (int i = 0; i < 30; ++i) big << "e " << i << " " << i + 2 << "\n";
    TempFile graph("big.txt", big.str());
    std::ostringstream out, err;
    CommandOutcome outcome = dispatch({"solve", "exact", "--k", "3", graph.path}, out, err);
    CHECK(outcome.exit_code == 2);
    CHECK(err.str().find("cap") != std::string::npos);
    // raising the cap turns it into an answer
    auto ok = run({"solve", "exact", "--k", "3", "--max-edges", "100", graph.path});
    CHECK((ok.code == 0 || ok.code == 1));
}
