#include "mbfd/exact_solver.hpp"

#include <algorithm>

namespace mbfd {

namespace {

// Incremental forest-side bookkeeping with rollback. Components are tracked
// through a union-find whose roots carry the component shape (path length, or
// star size and center). add() either succeeds and journals its mutations, or
// fails leaving the state untouched.
class SideState {
public:
    enum class Shape { Path, Star };

    SideState(int n, Shape shape, KBound bound) : shape_(shape), bound_(bound) {
        deg_.assign(static_cast<std::size_t>(n), 0);
        parent_.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) parent_[static_cast<std::size_t>(i)] = i;
        size_.assign(static_cast<std::size_t>(n), 0);    // edges in component, valid at roots
        center_.assign(static_cast<std::size_t>(n), -1); // star center, valid at roots
    }

    bool add(VertexId u, VertexId v) {
        return shape_ == Shape::Path ? add_path(u, v) : add_star(u, v);
    }

    void checkpoint() { journal_.push_back(Entry::marker()); }

    void rollback() {
        while (!journal_.empty()) {
            Entry e = journal_.back();
            journal_.pop_back();
            if (e.is_marker()) break;
            if (e.vertex >= 0) {
                deg_[static_cast<std::size_t>(e.vertex)] = e.old_deg;
            } else {
                parent_[static_cast<std::size_t>(e.joined_root)] = e.joined_root;
                size_[static_cast<std::size_t>(e.kept_root)] = e.old_size;
                center_[static_cast<std::size_t>(e.kept_root)] = e.old_center;
            }
        }
    }

private:
    struct Entry {
        int joined_root = -1;
        int kept_root = -1;
        long long old_size = 0;
        int old_deg = 0;
        int vertex = -1;
        int old_center = -1;
        static Entry marker() { return Entry{}; }
        bool is_marker() const { return vertex < 0 && joined_root < 0; }
    };

    int find(int v) const {
        while (parent_[static_cast<std::size_t>(v)] != v) v = parent_[static_cast<std::size_t>(v)];
        return v;
    }

    void bump_deg(VertexId v) {
        Entry e;
        e.vertex = v;
        e.old_deg = deg_[static_cast<std::size_t>(v)];
        journal_.push_back(e);
        deg_[static_cast<std::size_t>(v)]++;
    }

    void unite(int child, int keep, long long new_size, int new_center) {
        Entry e;
        e.joined_root = child;
        e.kept_root = keep;
        e.old_size = size_[static_cast<std::size_t>(keep)];
        e.old_center = center_[static_cast<std::size_t>(keep)];
        journal_.push_back(e);
        parent_[static_cast<std::size_t>(child)] = keep;
        size_[static_cast<std::size_t>(keep)] = new_size;
        center_[static_cast<std::size_t>(keep)] = new_center;
    }

    int max_path_deg() const { return (!bound_.is_infinite() && bound_.value() == 1) ? 1 : 2; }

    // Invariant: a vertex with side-degree 0 is its own root with size 0, so
    // find(u) == find(v) here always means the new edge would close a cycle.
    bool add_path(VertexId u, VertexId v) {
        if (deg_[static_cast<std::size_t>(u)] >= max_path_deg() ||
            deg_[static_cast<std::size_t>(v)] >= max_path_deg())
            return false;
        int ru = find(u);
        int rv = find(v);
        if (ru == rv) return false;
        long long len = size_[static_cast<std::size_t>(ru)] + size_[static_cast<std::size_t>(rv)] + 1;
        if (!bound_.admits(len)) return false;
        unite(ru, rv, len, -1);
        bump_deg(u);
        bump_deg(v);
        return true;
    }

    bool add_star(VertexId u, VertexId v) {
        int du = deg_[static_cast<std::size_t>(u)];
        int dv = deg_[static_cast<std::size_t>(v)];
        // Any edge between two already-touched vertices makes a cycle, a path
        // through a leaf, or joins two stars; all are invalid.
        if (du > 0 && dv > 0) return false;
        if (du == 0 && dv == 0) {
            unite(find(u), find(v), 1, -1); // bare edge, center undecided
        } else {
            VertexId in = du > 0 ? u : v;
            VertexId fresh = du > 0 ? v : u;
            int r = find(in);
            long long sz = size_[static_cast<std::size_t>(r)];
            int c = center_[static_cast<std::size_t>(r)];
            if (sz == 1 && c < 0) {
                c = in; // a bare edge re-roots at its touched endpoint
            } else if (c != in) {
                return false; // `in` is a leaf; extending it breaks the star
            }
            if (!bound_.admits(sz + 1)) return false;
            unite(find(fresh), r, sz + 1, c);
        }
        bump_deg(u);
        bump_deg(v);
        return true;
    }

    Shape shape_;
    KBound bound_;
    std::vector<int> deg_;
    std::vector<int> parent_;
    std::vector<long long> size_;
    std::vector<int> center_;
    std::vector<Entry> journal_;
};

// Edge processing order: greedily prefer edges touching already-seen vertices
// so pruning fires close to the root of the search tree.
std::vector<int> search_order(const Graph& g) {
    int m = g.edge_count();
    std::vector<int> order;
    order.reserve(static_cast<std::size_t>(m));
    std::vector<bool> used(static_cast<std::size_t>(m), false);
    std::vector<bool> seen(static_cast<std::size_t>(g.vertex_count()), false);
    for (int step = 0; step < m; ++step) {
        int best = -1;
        int best_score = -1;
        for (int id = 0; id < m; ++id) {
            if (used[static_cast<std::size_t>(id)]) continue;
            const Edge& e = g.edge(id);
            int score = (seen[static_cast<std::size_t>(e.lo())] ? 1 : 0) +
                        (seen[static_cast<std::size_t>(e.hi())] ? 1 : 0);
            if (score > best_score) {
                best_score = score;
                best = id;
            }
        }
        used[static_cast<std::size_t>(best)] = true;
        seen[static_cast<std::size_t>(g.edge(best).lo())] = true;
        seen[static_cast<std::size_t>(g.edge(best).hi())] = true;
        order.push_back(best);
    }
    return order;
}

class Search {
public:
    Search(const Graph& g, const DecompSpec& spec,
           const std::vector<std::optional<EdgeLabel>>* forced)
        : g_(g),
          forced_(forced),
          forest_(g.vertex_count(),
                  spec.kind == SpecKind::Linear ? SideState::Shape::Path : SideState::Shape::Star,
                  spec.k),
          second_(g.vertex_count(), SideState::Shape::Path, spec.l),
          order_(search_order(g)),
          labels_(static_cast<std::size_t>(g.edge_count()), EdgeLabel::Forest) {}

    void run(const std::function<SearchStep(const std::vector<EdgeLabel>&)>& fn) {
        fn_ = &fn;
        stop_ = false;
        descend(0);
    }

private:
    bool try_label(int edge_id, EdgeLabel lab) {
        const Edge& e = g_.edge(edge_id);
        SideState& side = lab == EdgeLabel::Forest ? forest_ : second_;
        side.checkpoint();
        if (!side.add(e.lo(), e.hi())) {
            side.rollback();
            return false;
        }
        labels_[static_cast<std::size_t>(edge_id)] = lab;
        return true;
    }

    void undo_label(int edge_id) {
        SideState& side =
            labels_[static_cast<std::size_t>(edge_id)] == EdgeLabel::Forest ? forest_ : second_;
        side.rollback();
    }

    void descend(std::size_t depth) {
        if (stop_) return;
        if (depth == order_.size()) {
            if ((*fn_)(labels_) == SearchStep::Stop) stop_ = true;
            return;
        }
        int edge_id = order_[depth];
        const std::optional<EdgeLabel>* force =
            forced_ ? &(*forced_)[static_cast<std::size_t>(edge_id)] : nullptr;
        for (EdgeLabel lab : {EdgeLabel::Forest, EdgeLabel::Matching}) {
            if (force && force->has_value() && **force != lab) continue;
            if (!try_label(edge_id, lab)) continue;
            descend(depth + 1);
            undo_label(edge_id);
            if (stop_) return;
        }
    }

    const Graph& g_;
    const std::vector<std::optional<EdgeLabel>>* forced_;
    SideState forest_;
    SideState second_;
    std::vector<int> order_;
    std::vector<EdgeLabel> labels_;
    const std::function<SearchStep(const std::vector<EdgeLabel>&)>* fn_ = nullptr;
    bool stop_ = false;
};

void check_cap(const Graph& g, const SearchLimits& limits) {
    if (static_cast<std::size_t>(g.edge_count()) > limits.max_edges)
        throw SizeCapError(static_cast<std::size_t>(g.edge_count()), limits.max_edges);
}

} // namespace

void for_each_decomposition(const Graph& g, const DecompSpec& spec,
                            const std::function<SearchStep(const std::vector<EdgeLabel>&)>& fn,
                            const SearchLimits& limits,
                            const std::vector<std::optional<EdgeLabel>>* forced) {
    check_cap(g, limits);
    Search s(g, spec, forced);
    s.run(fn);
}

std::optional<Decomposition> solve_exact(const Graph& g, const DecompSpec& spec,
                                         const SearchLimits& limits) {
    return solve_exact_constrained(g, spec, {}, limits);
}

std::optional<Decomposition> solve_exact_constrained(const Graph& g, const DecompSpec& spec,
                                                     const std::vector<std::optional<EdgeLabel>>& forced,
                                                     const SearchLimits& limits) {
    std::optional<std::vector<EdgeLabel>> found;
    const std::vector<std::optional<EdgeLabel>>* forced_ptr = forced.empty() ? nullptr : &forced;
    if (!forced.empty() && forced.size() != static_cast<std::size_t>(g.edge_count()))
        throw std::invalid_argument("forced labeling must be indexed by edge id");
    for_each_decomposition(
        g, spec,
        [&](const std::vector<EdgeLabel>& labels) {
            found = labels;
            return SearchStep::Stop;
        },
        limits, forced_ptr);
    if (!found) return std::nullopt;
    return Decomposition(g, std::move(*found), spec);
}

EnumerationResult enumerate_decompositions(const Graph& g, const DecompSpec& spec,
                                           const EnumerationProjection& proj,
                                           const SearchLimits& limits) {
    for (std::size_t i = 0; i < proj.core_edges.size(); ++i) {
        int id = proj.core_edges[i];
        if (id < 0 || id >= g.edge_count())
            throw std::invalid_argument("projection edge id out of range");
        for (std::size_t j = i + 1; j < proj.core_edges.size(); ++j)
            if (proj.core_edges[j] == id) throw std::invalid_argument("duplicate projection edge");
    }
    EnumerationResult result;
    std::vector<EdgeLabel> restricted(proj.core_edges.size());
    for_each_decomposition(
        g, spec,
        [&](const std::vector<EdgeLabel>& labels) {
            result.total_count++;
            for (std::size_t i = 0; i < proj.core_edges.size(); ++i)
                restricted[i] = labels[static_cast<std::size_t>(proj.core_edges[i])];
            result.projections.insert(restricted);
            return SearchStep::Continue;
        },
        limits);
    return result;
}

} // namespace mbfd
