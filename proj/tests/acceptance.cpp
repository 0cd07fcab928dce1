// Acceptance suite: one check per shipping criterion, each printing a
// [PASS]/[FAIL] line with its runtime. Exits nonzero if anything fails.

#include "mbfd/chains.hpp"
#include "mbfd/cli.hpp"
#include "mbfd/exact_solver.hpp"
#include "mbfd/gadgets.hpp"
#include "mbfd/graph_io.hpp"
#include "mbfd/matching.hpp"
#include "mbfd/mbsfd.hpp"
#include "mbfd/sat_reduction.hpp"
#include "mbfd/sggf.hpp"

#include "support.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>

using namespace mbfd;
using testsupport::Rng;

namespace {

int failures = 0;

void criterion(int number, const std::string& title, double budget_seconds,
               const std::function<bool(std::string&)>& body) {
    std::string detail;
    auto start = std::chrono::steady_clock::now();
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (budget_seconds > 0 && seconds > budget_seconds) {
        ok = false;
        detail += (detail.empty() ? "" : "; ") + std::string("over time budget");
    }
    std::printf("[%s] criterion %2d: %s (%.1fs)%s%s\n", ok ? "PASS" : "FAIL", number, title.c_str(),
                seconds, detail.empty() ? "" : " — ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

bool expect(bool cond, const std::string& note, std::string& detail) {
    if (!cond && detail.empty()) detail = note;
    return cond;
}

// ---- gadget helpers ---------------------------------------------------

bool gadget_passes(GadgetKind kind, int k, std::optional<int> ell, std::string& detail) {
    GadgetReport r = verify_gadget(build_gadget(kind, k, ell));
    if (r.status == VerifyStatus::Pass) return true;
    std::ostringstream ss;
    ss << gadget_kind_name(kind) << " k=" << k;
    if (ell) ss << " ell=" << *ell;
    ss << " " << (r.status == VerifyStatus::SizeCap ? "hit the size cap" : "failed: " + r.failing_clause);
    detail = ss.str();
    return false;
}

// Single-edge deletions and additions that verification concretely rejects:
// either with a witness decomposition violating a universal clause, or with a
// named clause whose required decomposition provably does not exist.
// Structural pin breakage (a deleted pin edge) is not counted: those reports
// do not exercise the semantic clauses. Additions can never yield a witness
// decomposition against a correct forcer, because a valid labeling of a
// supergraph restricts to a valid labeling of the gadget, so the count mixes
// both evidence shapes.
struct MutationTally {
    int witnessed = 0; // failures carrying a counterexample decomposition
    int concrete = 0;  // witnessed + named-clause existence failures
};

MutationTally mutation_failures(const PinnedGadget& g, int want) {
    MutationTally tally;
    auto check = [&](Graph mutated) {
        PinnedGadget m = g;
        m.graph = std::move(mutated);
        GadgetReport r = verify_gadget(m);
        if (r.status != VerifyStatus::Fail) return;
        if (r.failing_clause == "pin_degree_one" || r.failing_clause == "pin_edge_missing") return;
        ++tally.concrete;
        if (r.witness.has_value()) ++tally.witnessed;
    };
    for (int id = 0; id < g.graph.edge_count() && tally.concrete < want; ++id) {
        std::vector<Edge> edges;
        for (int other = 0; other < g.graph.edge_count(); ++other)
            if (other != id) edges.push_back(g.graph.edge(other));
        check(Graph(g.graph.vertex_count(), edges));
    }
    int n = g.graph.vertex_count();
    for (int u = 0; u < n && tally.concrete < want; ++u)
        for (int v = u + 1; v < n && tally.concrete < want; ++v) {
            if (g.graph.has_edge(u, v)) continue;
            std::vector<Edge> edges = g.graph.edges();
            edges.emplace_back(u, v);
            check(Graph(n, edges));
        }
    return tally;
}

// ---- chain-profile oracle (embedded enumeration) ----------------------

std::set<int> embedded_achievable(int length, KBound k) {
    GraphBuilder gb;
    for (int i = 0; i <= length; ++i) gb.add_vertex();
    gb.add_edge(0, gb.add_vertex());
    gb.add_edge(0, gb.add_vertex());
    gb.add_edge(length, gb.add_vertex());
    gb.add_edge(length, gb.add_vertex());
    for (int i = 0; i < length; ++i) gb.add_edge(i, i + 1);
    Graph g = gb.build();
    int slot_a = *g.edge_id(0, 1);
    int slot_b = *g.edge_id(length - 1, length);
    std::set<int> counts;
    int m = g.edge_count();
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
        std::vector<EdgeLabel> labels(static_cast<std::size_t>(m));
        for (int e = 0; e < m; ++e)
            labels[static_cast<std::size_t>(e)] =
                (mask >> e) & 1 ? EdgeLabel::Matching : EdgeLabel::Forest;
        if (!validate_decomposition(Decomposition(g, labels, DecompSpec::star(k))).valid) continue;
        int c = (labels[static_cast<std::size_t>(slot_a)] == EdgeLabel::Matching ? 1 : 0) +
                (labels[static_cast<std::size_t>(slot_b)] == EdgeLabel::Matching ? 1 : 0);
        counts.insert(c);
    }
    return counts;
}

Chain synthetic_high_high_chain(int length) {
    Chain c;
    c.kind = ChainKind::Path;
    c.end_a = EndClass::HighDegree;
    c.end_b = EndClass::HighDegree;
    for (int i = 0; i < length; ++i) c.edge_ids.push_back(i);
    for (int i = 0; i <= length; ++i) c.vertices.push_back(i);
    return c;
}

// ---- connected graph enumeration for the differential -----------------

bool connected(int n, const std::vector<Edge>& edges) {
    if (n == 0) return true;
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (const Edge& e : edges) {
        adj[static_cast<std::size_t>(e.lo())].push_back(e.hi());
        adj[static_cast<std::size_t>(e.hi())].push_back(e.lo());
    }
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    std::vector<int> stack{0};
    seen[0] = true;
    int visited = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : adj[static_cast<std::size_t>(v)])
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = true;
                ++visited;
                stack.push_back(w);
            }
    }
    return visited == n;
}

// all small-gap subsets of {0..max_member}
std::vector<GapSet> all_small_gap_sets(int max_member) {
    std::vector<GapSet> out;
    for (unsigned mask = 1; mask < (1u << (max_member + 1)); ++mask) {
        GapSet a;
        for (int i = 0; i <= max_member; ++i)
            if ((mask >> i) & 1) a.push_back(i);
        if (is_small_gap(a)) out.push_back(a);
    }
    return out;
}

} // namespace

int main() {
    criterion(1, "gadget suite at k=3 verifies exhaustively; four or-gadget core labelings", 60,
              [&](std::string& detail) {
                  bool ok = gadget_passes(GadgetKind::MForcer, 3, std::nullopt, detail);
                  for (int ell = 1; ell <= 3 && ok; ++ell)
                      ok = gadget_passes(GadgetKind::FForcer, 3, ell, detail);
                  if (ok) {
                      GadgetReport r = verify_gadget(build_gadget(GadgetKind::Or, 3));
                      ok = expect(r.passed(), "or gadget failed", detail) &&
                           expect(r.core_labelings.size() == 4, "core labeling count != 4", detail);
                  }
                  if (ok) ok = gadget_passes(GadgetKind::Rejector, 3, std::nullopt, detail);
                  if (ok) ok = gadget_passes(GadgetKind::Variable, 3, std::nullopt, detail);
                  return ok;
              });

    criterion(2, "matching forcer verifies for every k in 3..9", 120, [&](std::string& detail) {
        for (int k = 3; k <= 9; ++k)
            if (!gadget_passes(GadgetKind::MForcer, k, std::nullopt, detail)) return false;
        return true;
    });

    criterion(3, "or/rejector breadth; size-cap report instead of a verdict beyond it", 600,
              [&](std::string& detail) {
                  for (int k : {3, 4, 5})
                      if (!gadget_passes(GadgetKind::Or, k, std::nullopt, detail)) return false;
                  for (int k : {3, 4})
                      if (!gadget_passes(GadgetKind::Rejector, k, std::nullopt, detail)) return false;
                  GadgetReport orr = verify_gadget(build_gadget(GadgetKind::Or, 6));
                  GadgetReport rej = verify_gadget(build_gadget(GadgetKind::Rejector, 5));
                  return expect(orr.status == VerifyStatus::SizeCap, "or at k=6 should hit the cap",
                                detail) &&
                         expect(rej.status == VerifyStatus::SizeCap,
                                "rejector at k=5 should hit the cap", detail);
              });

    criterion(4, "mutation sensitivity: >= 10 witnessed failures per gadget kind at k=3", 600,
              [&](std::string& detail) {
                  struct Case {
                      GadgetKind kind;
                      std::optional<int> ell;
                  };
                  std::string tallies;
                  for (Case c : {Case{GadgetKind::MForcer, std::nullopt},
                                 Case{GadgetKind::FForcer, 2},
                                 Case{GadgetKind::Or, std::nullopt},
                                 Case{GadgetKind::Rejector, std::nullopt},
                                 Case{GadgetKind::Variable, std::nullopt}}) {
                      PinnedGadget g = build_gadget(c.kind, 3, c.ell);
                      MutationTally got = mutation_failures(g, 10);
                      if (got.concrete < 10) {
                          detail = gadget_kind_name(c.kind) + ": only " +
                                   std::to_string(got.concrete) + " concrete mutation failures";
                          return false;
                      }
                      if (got.witnessed == 0) {
                          detail = gadget_kind_name(c.kind) + ": no witness decompositions at all";
                          return false;
                      }
                      if (!tallies.empty()) tallies += ", ";
                      tallies += gadget_kind_name(c.kind) + " " + std::to_string(got.concrete) +
                                 " (" + std::to_string(got.witnessed) + " with witness)";
                  }
                  detail = tallies;
                  return true;
              });

    // criteria 5 and 6 share the produced certificates
    std::vector<std::pair<CnfInstance, Decomposition>> certificates;
    criterion(5, "sample + 100 random satisfiable instances roundtrip through the reduction", 300,
              [&](std::string& detail) {
                  const char* sample_cnf =
                      "p cnf 6 7\n-1 2 0\n1 3 0\n1 -2 3 0\n2 -4 5 0\n-3 4 6 0\n4 -5 6 0\n5 -6 0\n";
                  CnfInstance sample = load_instance(std::string(sample_cnf));
                  std::vector<CnfInstance> corpus{sample};
                  Rng rng(1001);
                  std::uint64_t seed = 0;
                  while (corpus.size() < 101) {
                      int vars = 3 + rng.below(6); // 3..8
                      CnfInstance inst = generate_random_instance(vars, seed++);
                      if (brute_force_sat(inst)) corpus.push_back(inst);
                      if (seed > 100000) return expect(false, "generator starvation", detail);
                  }
                  for (const CnfInstance& inst : corpus) {
                      auto phi = brute_force_sat(inst);
                      if (!expect(phi.has_value(), "oracle lost a satisfiable instance", detail))
                          return false;
                      Decomposition d = assignment_to_decomposition(inst, 3, *phi);
                      if (!expect(validate_decomposition(d).valid, "certificate invalid", detail))
                          return false;
                      auto [g, pins] = build_reduction_graph(inst, 3);
                      Assignment back = decomposition_to_assignment(inst, pins, d);
                      if (!expect(satisfies(inst, back), "recovered assignment unsatisfying",
                                  detail))
                          return false;
                      certificates.emplace_back(inst, std::move(d));
                  }
                  return true;
              });

    criterion(6, "clash exclusion on every produced certificate", 60, [&](std::string& detail) {
        if (!expect(certificates.size() == 101, "criterion 5 must run first", detail)) return false;
        for (const auto& [inst, d] : certificates) {
            auto [g, pins] = build_reduction_graph(inst, 3);
            for (const auto& vp : pins.variables) {
                auto lab = [&](const Edge& e) { return d.label(*d.graph.edge_id(e.lo(), e.hi())); };
                bool pos = lab(vp.positive_edge[0]) == EdgeLabel::Forest ||
                           lab(vp.positive_edge[1]) == EdgeLabel::Forest;
                bool neg = lab(vp.negative_edge) == EdgeLabel::Forest;
                if (!expect(!(pos && neg), "clashing forest input edges", detail)) return false;
            }
        }
        return true;
    });

    criterion(7, "chain profile table matches the construction and brute force", 120,
              [&](std::string& detail) {
                  const std::set<int> rows[] = {{2}, {1}, {0, 2}, {1, 2}};
                  for (int len = 1; len <= 9; ++len) {
                      std::set<int> want = len <= 4 ? rows[len - 1] : std::set<int>{0, 1, 2};
                      for (KBound k : {KBound::finite(2), KBound::finite(3), KBound::infinite()}) {
                          ChainProfile p = chain_profile(synthetic_high_high_chain(len), k);
                          if (!expect(p.achievable == want,
                                      "row mismatch at length " + std::to_string(len), detail))
                              return false;
                          if (!expect(is_small_gap(GapSet(p.achievable.begin(), p.achievable.end())),
                                      "achievable set is not small-gap", detail))
                              return false;
                      }
                      if (!expect(embedded_achievable(len, KBound::finite(3)) == want,
                                  "brute-force disagreement at length " + std::to_string(len),
                                  detail))
                          return false;
                  }
                  return true;
              });

    criterion(8, "matching + star forest decisions match exhaustive search", 600,
              [&](std::string& detail) {
                  const KBound ks[] = {KBound::finite(2), KBound::finite(3), KBound::finite(4),
                                       KBound::infinite()};
                  long long checked = 0;
                  // (a) every connected graph with at most 7 edges (n <= 8 vertices)
                  for (int n = 1; n <= 8; ++n) {
                      std::vector<Edge> all;
                      for (int i = 0; i < n; ++i)
                          for (int j = i + 1; j < n; ++j) all.emplace_back(i, j);
                      int total = static_cast<int>(all.size());
                      int max_m = std::min(7, total);
                      // iterate subsets of size n-1 .. max_m (fewer cannot connect)
                      for (std::uint32_t mask = 0; mask < (1u << total); ++mask) {
                          int bits = __builtin_popcount(mask);
                          if (bits < n - 1 || bits > max_m) continue;
                          std::vector<Edge> edges;
                          for (int e = 0; e < total; ++e)
                              if ((mask >> e) & 1) edges.push_back(all[static_cast<std::size_t>(e)]);
                          if (!connected(n, edges)) continue;
                          Graph g(n, edges);
                          for (KBound k : ks) {
                              MbsfdResult fast = solve_mbsfd(g, k);
                              bool slow = solve_exact(g, DecompSpec::star(k)).has_value();
                              if (!expect(fast.yes() == slow, "disagreement on a small graph",
                                          detail))
                                  return false;
                              if (fast.yes() &&
                                  !expect(validate_decomposition(*fast.decomposition).valid,
                                          "invalid certificate", detail))
                                  return false;
                              ++checked;
                          }
                      }
                  }
                  // (b) 2000 random graphs per k with <= 10 edges and max degree <= k+1
                  Rng rng(4242);
                  for (KBound k : ks) {
                      int dmax = k.is_infinite() ? 8 : k.value() + 1;
                      for (int i = 0; i < 2000; ++i) {
                          Graph g = testsupport::random_bounded_degree_graph(
                              rng, 2 + rng.below(8), rng.below(11), dmax);
                          if (g.edge_count() > 10) continue;
                          MbsfdResult fast = solve_mbsfd(g, k);
                          bool slow = solve_exact(g, DecompSpec::star(k)).has_value();
                          if (!expect(fast.yes() == slow, "disagreement on a random graph", detail))
                              return false;
                          if (fast.yes() &&
                              !expect(validate_decomposition(*fast.decomposition).valid,
                                      "invalid certificate", detail))
                              return false;
                          ++checked;
                      }
                  }
                  detail = std::to_string(checked) + " decisions compared";
                  return true;
              });

    criterion(9, "degree >= k+2 short-circuits without running the pipeline", 60,
              [&](std::string& detail) {
                  Rng rng(909);
                  for (int i = 0; i < 100; ++i) {
                      int k = 1 + rng.below(5);
                      int n = k + 3 + rng.below(6);
                      // random graph, then force one vertex over the bound
                      std::set<Edge> edges;
                      for (int e = 0; e < 2 * n; ++e) {
                          int u = rng.below(n);
                          int v = rng.below(n);
                          if (u != v) edges.insert(Edge(u, v));
                      }
                      for (int j = 1; j <= k + 2; ++j) edges.insert(Edge(0, j));
                      Graph g(n, {edges.begin(), edges.end()});
                      MbsfdResult r = solve_mbsfd(g, KBound::finite(k));
                      if (!expect(!r.yes(), "must be a no-instance", detail)) return false;
                      if (!expect(r.method == MbsfdMethod::DegreeShortCircuit,
                                  "pipeline ran despite the degree bound", detail))
                          return false;
                  }
                  return true;
              });

    criterion(10, "degree-set solver, gadget validator, and matching engine against oracles", 600,
              [&](std::string& detail) {
                  // gadget validator across every (d <= 6, small-gap A) pair
                  for (int d = 0; d <= 6; ++d)
                      for (const GapSet& a : all_small_gap_sets(d)) {
                          std::string why;
                          VertexGadget g = build_vertex_gadget(d, a);
                          if (!expect(validate_vertex_gadget(g, &why),
                                      "gadget validation failed: " + why, detail))
                              return false;
                      }
                  // 10k random instances against the subset oracle
                  Rng rng(10101);
                  std::vector<GapSet> menu = all_small_gap_sets(4);
                  for (int i = 0; i < 10000; ++i) {
                      int n = 2 + rng.below(7);
                      MultiGraph g(n);
                      int m = rng.below(9);
                      for (int e = 0; e < m; ++e) {
                          int u = rng.below(n);
                          int v = rng.below(n);
                          if (u != v && g.degree(u) < 5 && g.degree(v) < 5) g.add_edge(u, v);
                      }
                      SggfInstance inst;
                      inst.graph = g;
                      for (int v = 0; v < n; ++v)
                          inst.sets.push_back(
                              menu[static_cast<std::size_t>(rng.below(static_cast<int>(menu.size())))]);
                      auto fast = solve_sggf(inst);
                      auto slow = solve_sggf_oracle(inst);
                      if (!expect(fast.has_value() == slow.has_value(),
                                  "solver/oracle disagreement", detail))
                          return false;
                      if (fast) {
                          std::vector<int> deg(static_cast<std::size_t>(n), 0);
                          for (int id : *fast) {
                              deg[static_cast<std::size_t>(inst.graph.edge(id).lo())]++;
                              deg[static_cast<std::size_t>(inst.graph.edge(id).hi())]++;
                          }
                          for (int v = 0; v < n; ++v)
                              if (!expect(gap_set_contains(inst.sets[static_cast<std::size_t>(v)],
                                                           deg[static_cast<std::size_t>(v)]),
                                          "returned subset violates a set", detail))
                                  return false;
                      }
                  }
                  // matching engine: exhaustive on all 5-vertex graphs, then random up to 12 edges
                  std::vector<Edge> k5;
                  for (int i = 0; i < 5; ++i)
                      for (int j = i + 1; j < 5; ++j) k5.emplace_back(i, j);
                  for (std::uint32_t mask = 0; mask < (1u << k5.size()); ++mask) {
                      MultiGraph g(5);
                      for (std::size_t e = 0; e < k5.size(); ++e)
                          if ((mask >> e) & 1) g.add_edge(k5[e].lo(), k5[e].hi());
                      if (!expect(max_matching(g).size() ==
                                      testsupport::exhaustive_max_matching_size(g),
                                  "matching size off on a 5-vertex graph", detail))
                          return false;
                  }
                  for (int i = 0; i < 2000; ++i) {
                      int n = 2 + rng.below(9);
                      MultiGraph g(n);
                      int m = rng.below(13);
                      for (int e = 0; e < m; ++e) {
                          int u = rng.below(n);
                          int v = rng.below(n);
                          if (u != v) g.add_edge(u, v);
                      }
                      if (!expect(max_matching(g).size() ==
                                      testsupport::exhaustive_max_matching_size(g),
                                  "matching size off on a random graph", detail))
                          return false;
                  }
                  return true;
              });

    criterion(11, "complexity classification grid", 10, [&](std::string& detail) {
        const KBound grid[] = {KBound::finite(1), KBound::finite(2), KBound::finite(3),
                               KBound::finite(4), KBound::finite(9), KBound::infinite()};
        for (KBound k : grid)
            for (KBound l : grid) {
                bool poly = !k.is_infinite() && !l.is_infinite() && k.value() + l.value() <= 3;
                if (!expect((classify(k, l) == ComplexityClass::Polynomial) == poly,
                            "classification mismatch at (" + k.str() + "," + l.str() + ")", detail))
                    return false;
            }
        return true;
    });

    if (failures == 0) {
        std::printf("all criteria passed\n");
        return 0;
    }
    std::printf("%d criteria failed\n", failures);
    return 1;
}
