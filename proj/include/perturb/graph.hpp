#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace perturb {

using Vertex = int;

// Unordered pair {u, v}, stored with u < v.
struct Edge {
    Vertex u = 0;
    Vertex v = 0;

    Edge() = default;
    Edge(Vertex a, Vertex b) : u(std::min(a, b)), v(std::max(a, b)) {}

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline std::uint64_t pair_count(std::uint64_t n) { return n * (n - 1) / 2; }

// Simple undirected graph on 0..n-1. Packed bit rows give O(1) membership,
// adjacency lists give neighbor iteration. Edges can only be added.
class Graph {
public:
    Graph() = default;

    explicit Graph(int n) : n_(n), words_((n + 63) / 64) {
        if (n < 0) throw std::invalid_argument("Graph: negative vertex count");
        bits_.assign(words_ * n, 0);
        adjacency_.resize(n);
    }

    Graph(int n, std::span<const Edge> edges) : Graph(n) {
        for (const Edge& e : edges) add_edge(e.u, e.v);
    }

    int order() const { return n_; }
    std::size_t edge_count() const { return edge_count_; }

    bool has_edge(Vertex u, Vertex v) const {
        check_vertex(u);
        check_vertex(v);
        return test_bit(u, v);
    }

    // Returns false when the edge was already present.
    bool add_edge(Vertex u, Vertex v) {
        check_vertex(u);
        check_vertex(v);
        if (u == v) throw std::invalid_argument("Graph: self-loop " + std::to_string(u));
        if (test_bit(u, v)) return false;
        set_bit(u, v);
        set_bit(v, u);
        adjacency_[u].push_back(v);
        adjacency_[v].push_back(u);
        ++edge_count_;
        return true;
    }

    bool add_edge(const Edge& e) { return add_edge(e.u, e.v); }

    std::span<const Vertex> neighbors(Vertex v) const {
        check_vertex(v);
        return adjacency_[v];
    }

    int degree(Vertex v) const { return static_cast<int>(neighbors(v).size()); }

    // Bit row of v: bit w set iff {v, w} is an edge.
    std::span<const std::uint64_t> row(Vertex v) const {
        check_vertex(v);
        return {bits_.data() + v * words_, words_};
    }

    std::size_t words_per_row() const { return words_; }

    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        out.reserve(edge_count_);
        for (Vertex u = 0; u < n_; ++u)
            for (Vertex v : adjacency_[u])
                if (u < v) out.emplace_back(u, v);
        std::sort(out.begin(), out.end());
        return out;
    }

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.n_ == b.n_ && a.edge_count_ == b.edge_count_ && a.bits_ == b.bits_;
    }

private:
    void check_vertex(Vertex v) const {
        if (v < 0 || v >= n_) throw std::out_of_range("Graph: vertex " + std::to_string(v) + " out of range");
    }
    bool test_bit(Vertex u, Vertex v) const {
        const std::size_t idx = u * words_ + v / 64;
        return (bits_[idx] >> (static_cast<unsigned>(v) % 64)) & 1U;
    }
    void set_bit(Vertex u, Vertex v) {
        const std::size_t idx = u * words_ + v / 64;
        bits_[idx] |= std::uint64_t{1} << (static_cast<unsigned>(v) % 64);
    }

    int n_ = 0;
    std::size_t words_ = 0;
    std::size_t edge_count_ = 0;
    std::vector<std::uint64_t> bits_;
    std::vector<std::vector<Vertex>> adjacency_;
};

inline Graph graph_union(const Graph& g, const Graph& h) {
    if (g.order() != h.order())
        throw std::invalid_argument("graph_union: vertex counts differ (" + std::to_string(g.order()) + " vs " +
                                    std::to_string(h.order()) + ")");
    Graph out = g;
    for (Vertex u = 0; u < h.order(); ++u)
        for (Vertex v : h.neighbors(u))
            if (u < v) out.add_edge(u, v);
    return out;
}

inline int min_degree(const Graph& g) {
    if (g.order() < 1) throw std::invalid_argument("min_degree: empty graph");
    int best = g.degree(0);
    for (Vertex v = 1; v < g.order(); ++v) best = std::min(best, g.degree(v));
    return best;
}

// Deficiency below the Dirac bound, doubled so odd n stays integral:
// 2*eta = n - 2*delta(g).
inline int twice_eta(const Graph& g) { return g.order() - 2 * min_degree(g); }

namespace detail {

// Vertices reachable from `start` avoiding `removed` (pass -1 for none).
inline int reachable_count(const Graph& g, Vertex start, Vertex removed) {
    std::vector<char> seen(static_cast<std::size_t>(g.order()), 0);
    std::vector<Vertex> stack{start};
    seen[start] = 1;
    int count = 1;
    while (!stack.empty()) {
        const Vertex u = stack.back();
        stack.pop_back();
        for (Vertex w : g.neighbors(u)) {
            if (w == removed || seen[w]) continue;
            seen[w] = 1;
            ++count;
            stack.push_back(w);
        }
    }
    return count;
}

}  // namespace detail

inline bool is_connected(const Graph& g) {
    if (g.order() < 1) throw std::invalid_argument("is_connected: empty graph");
    return detail::reachable_count(g, 0, -1) == g.order();
}

// Iterative Hopcroft-Tarjan lowpoint search; true iff connected with no
// articulation vertex.
inline bool is_2_connected(const Graph& g) {
    const int n = g.order();
    if (n < 3) throw std::invalid_argument("is_2_connected: requires at least 3 vertices");

    std::vector<int> disc(n, -1);
    std::vector<int> low(n, 0);
    std::vector<Vertex> parent(n, -1);
    std::vector<std::size_t> next_edge(n, 0);

    int time = 0;
    int root_children = 0;
    std::vector<Vertex> stack{0};
    disc[0] = low[0] = time++;

    while (!stack.empty()) {
        const Vertex u = stack.back();
        const auto nbrs = g.neighbors(u);
        auto& i = next_edge[u];
        if (i < nbrs.size()) {
            const Vertex w = nbrs[i++];
            if (disc[w] < 0) {
                parent[w] = u;
                disc[w] = low[w] = time++;
                if (u == 0) ++root_children;
                stack.push_back(w);
            } else if (w != parent[u]) {
                low[u] = std::min(low[u], disc[w]);
            }
            continue;
        }
        stack.pop_back();
        const Vertex p = parent[u];
        if (p < 0) continue;
        low[p] = std::min(low[p], low[u]);
        // Non-root p separates u's subtree from the rest.
        if (p != 0 && low[u] >= disc[p]) return false;
    }
    if (time != n) return false;
    return root_children == 1;
}

// Subgraph induced on `vertices`, relabelled to 0..k-1 in the given order.
inline Graph induced_subgraph(const Graph& g, std::span<const Vertex> vertices) {
    std::vector<int> label(static_cast<std::size_t>(g.order()), -1);
    for (std::size_t i = 0; i < vertices.size(); ++i) label[vertices[i]] = static_cast<int>(i);
    Graph out(static_cast<int>(vertices.size()));
    for (std::size_t i = 0; i < vertices.size(); ++i)
        for (Vertex w : g.neighbors(vertices[i])) {
            const int j = label[w];
            if (j > static_cast<int>(i)) out.add_edge(static_cast<int>(i), j);
        }
    return out;
}

}  // namespace perturb
