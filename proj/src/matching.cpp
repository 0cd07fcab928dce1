#include "mbfd/matching.hpp"

#include <algorithm>
#include <queue>

namespace mbfd {

namespace {

// Alternating-tree blossom search, one augmentation per BFS from an exposed
// root. base[] tracks blossom bases; blossoms stay implicitly contracted via
// base equality. parent_/parent_edge_ point toward the root along an
// unmatched edge and are re-oriented inside contracted blossoms.
class Blossom {
public:
    explicit Blossom(const MultiGraph& g)
        : g_(g),
          n_(g.vertex_count()),
          mate_(static_cast<std::size_t>(n_), -1),
          mate_edge_(static_cast<std::size_t>(n_), -1),
          parent_(static_cast<std::size_t>(n_), -1),
          parent_edge_(static_cast<std::size_t>(n_), -1),
          base_(static_cast<std::size_t>(n_), 0),
          outer_(static_cast<std::size_t>(n_), false),
          in_blossom_(static_cast<std::size_t>(n_), false),
          on_path_(static_cast<std::size_t>(n_), false) {}

    MatchingResult run() {
        // Greedy seed keeps the number of augmenting searches down.
        for (int id = 0; id < g_.edge_count(); ++id) {
            const Edge& e = g_.edge(id);
            if (mate(e.lo()) < 0 && mate(e.hi()) < 0) set_mate(e.lo(), e.hi(), id);
        }
        for (int v = 0; v < n_; ++v)
            if (mate(v) < 0) {
                int tail = find_augmenting_path(v);
                if (tail >= 0) augment_along(tail);
            }

        MatchingResult out;
        out.mate = mate_;
        out.mate_edge = mate_edge_;
        for (int v = 0; v < n_; ++v)
            if (mate(v) > v) out.edge_ids.push_back(mate_edge_[static_cast<std::size_t>(v)]);
        return out;
    }

private:
    int mate(int v) const { return mate_[static_cast<std::size_t>(v)]; }
    int base(int v) const { return base_[static_cast<std::size_t>(v)]; }
    int parent(int v) const { return parent_[static_cast<std::size_t>(v)]; }

    void set_mate(int u, int v, int edge_id) {
        mate_[static_cast<std::size_t>(u)] = v;
        mate_[static_cast<std::size_t>(v)] = u;
        mate_edge_[static_cast<std::size_t>(u)] = edge_id;
        mate_edge_[static_cast<std::size_t>(v)] = edge_id;
    }

    int lowest_common_base(int u, int v) {
        std::fill(on_path_.begin(), on_path_.end(), false);
        int a = u;
        while (true) {
            a = base(a);
            on_path_[static_cast<std::size_t>(a)] = true;
            if (mate(a) < 0) break; // tree root
            a = parent(mate(a));
        }
        int b = v;
        while (true) {
            b = base(b);
            if (on_path_[static_cast<std::size_t>(b)]) return b;
            b = parent(mate(b));
        }
    }

    // Walk from even vertex v down to the common base, re-pointing parents
    // across the bridge so augmenting paths can leave the blossom either way.
    // (child, child_edge) is the far endpoint of the unmatched edge that will
    // become v's parent link.
    void mark_path(int v, int lcb, int child, int child_edge) {
        while (base(v) != lcb) {
            int mv = mate(v);
            in_blossom_[static_cast<std::size_t>(base(v))] = true;
            in_blossom_[static_cast<std::size_t>(base(mv))] = true;
            int next_v = parent(mv);
            int next_edge = parent_edge_[static_cast<std::size_t>(mv)];
            parent_[static_cast<std::size_t>(v)] = child;
            parent_edge_[static_cast<std::size_t>(v)] = child_edge;
            child = mv;
            child_edge = next_edge; // (next_v, mv) is mv's old tree edge
            v = next_v;
        }
    }

    void contract_blossom(int u, int v, int edge_id, std::queue<int>& bfs) {
        int lcb = lowest_common_base(u, v);
        std::fill(in_blossom_.begin(), in_blossom_.end(), false);
        mark_path(u, lcb, v, edge_id);
        mark_path(v, lcb, u, edge_id);
        for (int i = 0; i < n_; ++i) {
            if (in_blossom_[static_cast<std::size_t>(base(i))]) {
                base_[static_cast<std::size_t>(i)] = lcb;
                if (!outer_[static_cast<std::size_t>(i)]) {
                    outer_[static_cast<std::size_t>(i)] = true;
                    bfs.push(i);
                }
            }
        }
    }

    // Returns an exposed vertex whose parent chain reaches the root, or -1.
    int find_augmenting_path(int root) {
        std::fill(parent_.begin(), parent_.end(), -1);
        std::fill(parent_edge_.begin(), parent_edge_.end(), -1);
        std::fill(outer_.begin(), outer_.end(), false);
        for (int i = 0; i < n_; ++i) base_[static_cast<std::size_t>(i)] = i;

        std::queue<int> bfs;
        bfs.push(root);
        outer_[static_cast<std::size_t>(root)] = true;

        while (!bfs.empty()) {
            int u = bfs.front();
            bfs.pop();
            for (const auto& [w, id] : g_.incident(u)) {
                if (base(u) == base(w) || mate(u) == w) continue;
                if (w == root || (mate(w) >= 0 && parent(mate(w)) >= 0)) {
                    contract_blossom(u, w, id, bfs);
                } else if (parent(w) < 0) {
                    parent_[static_cast<std::size_t>(w)] = u;
                    parent_edge_[static_cast<std::size_t>(w)] = id;
                    int mw = mate(w);
                    if (mw < 0) return w;
                    if (!outer_[static_cast<std::size_t>(mw)]) {
                        outer_[static_cast<std::size_t>(mw)] = true;
                        bfs.push(mw);
                    }
                }
            }
        }
        return -1;
    }

    void augment_along(int w) {
        while (w >= 0) {
            int pv = parent(w);
            int pe = parent_edge_[static_cast<std::size_t>(w)];
            int next = mate(pv);
            set_mate(w, pv, pe);
            w = next;
        }
    }

    const MultiGraph& g_;
    int n_;
    std::vector<int> mate_;
    std::vector<int> mate_edge_;
    std::vector<int> parent_;
    std::vector<int> parent_edge_;
    std::vector<int> base_;
    std::vector<bool> outer_;
    std::vector<bool> in_blossom_;
    std::vector<bool> on_path_;
};

} // namespace

MatchingResult max_matching(const MultiGraph& g) {
    Blossom b(g);
    return b.run();
}

} // namespace mbfd
