#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "perturb/errors.hpp"
#include "perturb/graph.hpp"

namespace perturb {

// Largest 2-core (after peeling pendant trees) the exact branch-and-bound
// will take on when the greedy cover does not already meet an upper bound.
inline constexpr int kLinearForestComponentCap = 30;

namespace detail {

inline std::vector<std::vector<Vertex>> components(const Graph& g) {
    std::vector<int> comp(g.order(), -1);
    std::vector<std::vector<Vertex>> out;
    for (Vertex s = 0; s < g.order(); ++s) {
        if (comp[s] >= 0) continue;
        const int id = static_cast<int>(out.size());
        out.push_back({s});
        comp[s] = id;
        for (std::size_t head = 0; head < out.back().size(); ++head) {
            const Vertex u = out.back()[head];
            for (Vertex w : g.neighbors(u))
                if (comp[w] < 0) {
                    comp[w] = id;
                    out.back().push_back(w);
                }
        }
    }
    return out;
}

// Greedy path cover of one component: start at the vertex with fewest free
// neighbours, grow both ends towards the neighbour with fewest free neighbours.
inline std::vector<Edge> greedy_path_cover(const Graph& g, const std::vector<Vertex>& comp) {
    std::vector<char> used(g.order(), 0);
    std::vector<int> free_deg(g.order(), 0);
    for (Vertex v : comp) free_deg[v] = g.degree(v);
    auto take = [&](Vertex v) {
        used[v] = 1;
        for (Vertex w : g.neighbors(v)) --free_deg[w];
    };
    auto best_next = [&](Vertex tail) {
        Vertex pick = -1;
        for (Vertex w : g.neighbors(tail))
            if (!used[w] && (pick < 0 || free_deg[w] < free_deg[pick] || (free_deg[w] == free_deg[pick] && w < pick)))
                pick = w;
        return pick;
    };

    std::vector<Edge> out;
    std::size_t remaining = comp.size();
    while (remaining > 0) {
        Vertex start = -1;
        for (Vertex v : comp)
            if (!used[v] && (start < 0 || free_deg[v] < free_deg[start])) start = v;
        take(start);
        --remaining;
        for (int side = 0; side < 2; ++side) {
            Vertex tail = start;
            for (Vertex next = best_next(tail); next >= 0; next = best_next(tail)) {
                take(next);
                --remaining;
                out.emplace_back(tail, next);
                tail = next;
            }
        }
    }
    return out;
}

// Exact maximum linear forest of one connected graph. Pendant trees are
// peeled off and solved by a tree DP: for each vertex, open = best value of
// its subtree when it may still take its parent edge, closed = best overall.
// What remains is the 2-core, where vertex r earns bonus[r][j] from its trees
// when j of its two path slots are left to them; the core is solved by
// branch-and-bound on its edges.
class LinearForestSolver {
public:
    explicit LinearForestSolver(const Graph& g) : g_(g), n_(g.order()) {}

    std::vector<Edge> solve(int core_cap) {
        peel();
        tree_dp();
        core_.clear();
        for (int v = 0; v < n_; ++v)
            if (!peeled_[v]) core_.push_back(v);
        std::vector<Edge> out;
        if (core_.empty()) {
            for (int v = 0; v < n_; ++v)
                if (parent_[v] < 0) expand(v, 2, out);
            return out;
        }
        if (static_cast<int>(core_.size()) > core_cap)
            throw CapacityError("max_linear_forest: 2-core of size " + std::to_string(core_.size()) +
                                " exceeds cap " + std::to_string(core_cap));
        search_core();
        std::vector<int> used(n_, 0);
        for (const Edge& e : best_core_) {
            out.push_back(e);
            ++used[e.u];
            ++used[e.v];
        }
        for (int r : core_) expand(r, 2 - used[r], out);
        // Trees with no core vertex hang from a root of their own.
        for (int v = 0; v < n_; ++v)
            if (peeled_[v] && parent_[v] < 0) expand(v, 2, out);
        return out;
    }

private:
    // Removal order of vertices of degree <= 1; parent = the neighbour left
    // when the vertex went, or -1 for the last vertex of a tree.
    void peel() {
        peeled_.assign(n_, 0);
        parent_.assign(n_, -1);
        order_.clear();
        std::vector<int> deg(n_);
        std::vector<int> queue;
        for (int v = 0; v < n_; ++v) {
            deg[v] = g_.degree(v);
            if (deg[v] <= 1) queue.push_back(v);
        }
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const int v = queue[head];
            if (peeled_[v]) continue;
            peeled_[v] = 1;
            order_.push_back(v);
            for (Vertex w : g_.neighbors(v)) {
                if (peeled_[w]) continue;
                parent_[v] = w;
                if (--deg[w] <= 1) queue.push_back(w);
            }
        }
    }

    void tree_dp() {
        open_.assign(n_, 0);
        closed_.assign(n_, 0);
        children_.assign(n_, {});
        for (int v : order_)
            if (parent_[v] >= 0) children_[parent_[v]].push_back(v);
        auto settle = [&](int v) {
            int base = 0;
            int gains = 0;
            for (int c : children_[v]) {
                base += closed_[c];
                gains += open_[c] + 1 - closed_[c];
            }
            // Each gain is 0 or 1, so the best j children add min(j, gains).
            open_[v] = base + std::min(1, gains);
            closed_[v] = base + std::min(2, gains);
            base_[v] = base;
            gains_[v] = gains;
        };
        base_.assign(n_, 0);
        gains_.assign(n_, 0);
        for (int v : order_) settle(v);
        for (int v = 0; v < n_; ++v)
            if (!peeled_[v]) settle(v);
    }

    int bonus(int r, int slots) const { return base_[r] + std::min(slots, gains_[r]); }

    // Emits the tree edges below v when v may take `slots` child edges.
    void expand(int root, int slots, std::vector<Edge>& out) const {
        std::vector<std::pair<int, int>> stack{{root, slots}};
        while (!stack.empty()) {
            const auto [v, allowed] = stack.back();
            stack.pop_back();
            int left = allowed;
            for (int c : children_[v]) {
                if (left > 0 && open_[c] + 1 > closed_[c]) {
                    out.emplace_back(v, c);
                    --left;
                    stack.emplace_back(c, 1);
                } else {
                    stack.emplace_back(c, 2);
                }
            }
        }
    }

    int find(int v) const {
        while (dsu_[v] != v) v = dsu_[v];
        return v;
    }

    void search_core() {
        core_edges_.clear();
        for (int u : core_)
            for (Vertex w : g_.neighbors(u))
                if (u < w && !peeled_[w]) core_edges_.emplace_back(u, w);
        degree_.assign(n_, 0);
        remaining_.assign(n_, 0);
        dsu_.resize(n_);
        size_.assign(n_, 1);
        for (int v = 0; v < n_; ++v) dsu_[v] = v;
        for (const Edge& e : core_edges_) {
            ++remaining_[e.u];
            ++remaining_[e.v];
        }
        chosen_.clear();
        best_core_.clear();
        best_value_ = -1;
        value_ = 0;
        for (int r : core_) value_ += bonus(r, 2);
        branch(0);
    }

    // Twice an upper bound on the objective: each core vertex may still add
    // one half per extra path slot it can fill, on top of its tree bonus.
    int doubled_bound() const {
        int total = 2 * static_cast<int>(chosen_.size());
        for (int r : core_) {
            int best = 0;
            const int top = std::min(2, degree_[r] + remaining_[r]);
            for (int j = degree_[r]; j <= top; ++j)
                best = std::max(best, 2 * bonus(r, 2 - j) + (j - degree_[r]));
            total += best;
        }
        return total;
    }

    void branch(std::size_t i) {
        if (value_ > best_value_) {
            best_value_ = value_;
            best_core_ = chosen_;
        }
        if (i == core_edges_.size()) return;
        if (doubled_bound() <= 2 * best_value_) return;

        const Edge e = core_edges_[i];
        --remaining_[e.u];
        --remaining_[e.v];
        if (degree_[e.u] < 2 && degree_[e.v] < 2) {
            int a = find(e.u);
            int b = find(e.v);
            if (a != b) {
                if (size_[a] < size_[b]) std::swap(a, b);
                const int delta = 1 + bonus(e.u, 1 - degree_[e.u]) - bonus(e.u, 2 - degree_[e.u]) +
                                  bonus(e.v, 1 - degree_[e.v]) - bonus(e.v, 2 - degree_[e.v]);
                dsu_[b] = a;
                size_[a] += size_[b];
                ++degree_[e.u];
                ++degree_[e.v];
                chosen_.push_back(e);
                value_ += delta;
                branch(i + 1);
                value_ -= delta;
                chosen_.pop_back();
                --degree_[e.u];
                --degree_[e.v];
                size_[a] -= size_[b];
                dsu_[b] = b;
            }
        }
        branch(i + 1);
        ++remaining_[e.u];
        ++remaining_[e.v];
    }

    const Graph& g_;
    int n_;
    std::vector<char> peeled_;
    std::vector<int> parent_;
    std::vector<int> order_;
    std::vector<std::vector<int>> children_;
    std::vector<int> open_;
    std::vector<int> closed_;
    std::vector<int> base_;
    std::vector<int> gains_;
    std::vector<int> core_;
    std::vector<Edge> core_edges_;
    std::vector<int> degree_;
    std::vector<int> remaining_;
    std::vector<int> dsu_;
    std::vector<int> size_;
    std::vector<Edge> chosen_;
    std::vector<Edge> best_core_;
    int value_ = 0;
    int best_value_ = -1;
};

}  // namespace detail

// Maximum set of edges forming vertex-disjoint paths, solved per component.
// A component is settled by the greedy cover when it meets the bound
// min(s - 1, sum_v min(deg v, 2) / 2); otherwise exactly, with the cap on
// the size of its 2-core.
inline std::vector<Edge> max_linear_forest(const Graph& g) {
    std::vector<Edge> out;
    for (const auto& comp : detail::components(g)) {
        if (comp.size() < 2) continue;
        auto greedy = detail::greedy_path_cover(g, comp);
        int slack = 0;
        for (Vertex v : comp) slack += std::min(2, g.degree(v));
        const int ceiling = std::min(static_cast<int>(comp.size()) - 1, slack / 2);
        if (static_cast<int>(greedy.size()) >= ceiling) {
            out.insert(out.end(), greedy.begin(), greedy.end());
            continue;
        }
        std::vector<Vertex> sorted = comp;
        std::sort(sorted.begin(), sorted.end());
        const Graph local = induced_subgraph(g, sorted);
        for (const Edge& e : detail::LinearForestSolver(local).solve(kLinearForestComponentCap))
            out.emplace_back(sorted[e.u], sorted[e.v]);
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline bool is_linear_forest(const Graph& g, const std::vector<Edge>& edges) {
    std::vector<int> degree(g.order(), 0);
    std::vector<int> parent(g.order());
    for (Vertex v = 0; v < g.order(); ++v) parent[v] = v;
    auto find = [&](int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    for (const Edge& e : edges) {
        if (e.u == e.v || !g.has_edge(e.u, e.v)) return false;
        if (++degree[e.u] > 2 || ++degree[e.v] > 2) return false;
        const int a = find(e.u);
        const int b = find(e.v);
        if (a == b) return false;
        parent[a] = b;
    }
    return true;
}

}  // namespace perturb
