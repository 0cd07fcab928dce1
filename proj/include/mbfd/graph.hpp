#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mbfd {

using VertexId = int;

/// An unordered vertex pair, stored with lo() <= hi().
struct Edge {
    VertexId a = 0;
    VertexId b = 0;

    Edge() = default;
    Edge(VertexId u, VertexId v) : a(std::min(u, v)), b(std::max(u, v)) {}

    VertexId lo() const { return a; }
    VertexId hi() const { return b; }
    bool contains(VertexId v) const { return a == v || b == v; }
    VertexId other(VertexId v) const { return a == v ? b : a; }

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// A path/star size bound: a positive integer or unbounded.
/// Unbounded compares greater than every finite value.
struct KBound {
    // 0 encodes unbounded; valid finite values are >= 1.
    int raw = 0;

    KBound() = default;
    static KBound finite(int k) {
        if (k < 1) throw std::invalid_argument("KBound must be >= 1");
        KBound b;
        b.raw = k;
        return b;
    }
    static KBound infinite() { return KBound{}; }

    bool is_infinite() const { return raw == 0; }
    int value() const { return raw; }

    /// true iff a structure of `size` edges fits under this bound.
    bool admits(long long size) const { return is_infinite() || size <= raw; }

    std::string str() const { return is_infinite() ? "inf" : std::to_string(raw); }

    friend bool operator==(const KBound&, const KBound&) = default;
};

/// Simple undirected graph on vertices 0..n-1. Edges are deduplicated and
/// stored in canonical sorted order, so edge ids are stable across
/// construction order, serialization and reparsing.
class Graph {
public:
    Graph() = default;
    Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
        if (n_ < 0) throw std::invalid_argument("negative vertex count");
        std::sort(edges_.begin(), edges_.end());
        for (std::size_t i = 0; i < edges_.size(); ++i) {
            const Edge& e = edges_[i];
            if (e.lo() == e.hi()) throw std::invalid_argument("self-loop");
            if (e.lo() < 0 || e.hi() >= n_) throw std::invalid_argument("vertex out of range");
            if (i > 0 && edges_[i - 1] == e) throw std::invalid_argument("duplicate edge");
        }
        build_adjacency();
    }

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(int id) const { return edges_[static_cast<std::size_t>(id)]; }

    /// Incident (neighbor, edge id) pairs, sorted by neighbor.
    const std::vector<std::pair<VertexId, int>>& incident(VertexId v) const {
        return adj_[static_cast<std::size_t>(v)];
    }

    int degree(VertexId v) const { return static_cast<int>(adj_[static_cast<std::size_t>(v)].size()); }

    int max_degree() const {
        int d = 0;
        for (VertexId v = 0; v < n_; ++v) d = std::max(d, degree(v));
        return d;
    }

    bool has_edge(VertexId u, VertexId v) const { return edge_id(u, v).has_value(); }

    std::optional<int> edge_id(VertexId u, VertexId v) const {
        Edge e(u, v);
        auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
        if (it != edges_.end() && *it == e) return static_cast<int>(it - edges_.begin());
        return std::nullopt;
    }

private:
    void build_adjacency() {
        adj_.assign(static_cast<std::size_t>(n_), {});
        for (int id = 0; id < edge_count(); ++id) {
            const Edge& e = edges_[static_cast<std::size_t>(id)];
            adj_[static_cast<std::size_t>(e.lo())].emplace_back(e.hi(), id);
            adj_[static_cast<std::size_t>(e.hi())].emplace_back(e.lo(), id);
        }
    }

    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::pair<VertexId, int>>> adj_;
};

/// Incremental builder; freezes into a canonical Graph.
class GraphBuilder {
public:
    explicit GraphBuilder(int n = 0) : n_(n) {}

    VertexId add_vertex() { return n_++; }

    void ensure_vertex(VertexId v) { n_ = std::max(n_, v + 1); }

    void add_edge(VertexId u, VertexId v) {
        ensure_vertex(u);
        ensure_vertex(v);
        edges_.emplace_back(u, v);
    }

    /// Splices another builder's vertices in at a fresh offset; returns the
    /// mapping applied to `other`'s vertex ids.
    int splice(const GraphBuilder& other) {
        int offset = n_;
        n_ += other.n_;
        for (const Edge& e : other.edges_) edges_.emplace_back(e.lo() + offset, e.hi() + offset);
        return offset;
    }

    int vertex_count() const { return n_; }
    const std::vector<Edge>& pending_edges() const { return edges_; }

    Graph build() const { return Graph(n_, edges_); }

private:
    int n_ = 0;
    std::vector<Edge> edges_;
};

/// Undirected multigraph: parallel edges allowed (each with its own id,
/// in insertion order), self-loops still forbidden.
class MultiGraph {
public:
    MultiGraph() = default;
    explicit MultiGraph(int n) : n_(n) {
        if (n < 0) throw std::invalid_argument("negative vertex count");
        adj_.assign(static_cast<std::size_t>(n), {});
    }

    int add_vertex() {
        adj_.emplace_back();
        return n_++;
    }

    int add_edge(VertexId u, VertexId v) {
        if (u == v) throw std::invalid_argument("self-loop");
        if (u < 0 || v < 0 || u >= n_ || v >= n_) throw std::invalid_argument("vertex out of range");
        int id = static_cast<int>(edges_.size());
        edges_.emplace_back(u, v);
        adj_[static_cast<std::size_t>(u)].emplace_back(v, id);
        adj_[static_cast<std::size_t>(v)].emplace_back(u, id);
        return id;
    }

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(int id) const { return edges_[static_cast<std::size_t>(id)]; }
    const std::vector<std::pair<VertexId, int>>& incident(VertexId v) const {
        return adj_[static_cast<std::size_t>(v)];
    }
    int degree(VertexId v) const { return static_cast<int>(adj_[static_cast<std::size_t>(v)].size()); }

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::pair<VertexId, int>>> adj_;
};

} // namespace mbfd
