#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "perturb/certificates.hpp"
#include "perturb/errors.hpp"
#include "perturb/exact_cycles.hpp"
#include "perturb/graph.hpp"
#include "perturb/oriented_cycle.hpp"

namespace perturb {

// a0 b0 a1 b1 ... for K_{d,n-d} in the canonical layout: the 2d-cycle.
inline std::vector<Vertex> alternating_cycle_order(int d) {
    std::vector<Vertex> order;
    order.reserve(2 * d);
    for (Vertex i = 0; i < d; ++i) {
        order.push_back(i);
        order.push_back(d + i);
    }
    return order;
}

namespace detail {

// Grows `path` at both ends, always stepping to the free neighbour with the
// fewest free neighbours of its own.
inline void extend_path(const Graph& g, std::vector<Vertex>& path) {
    std::vector<char> used(g.order(), 0);
    std::vector<int> free_deg(g.order());
    for (Vertex v = 0; v < g.order(); ++v) free_deg[v] = g.degree(v);
    auto take = [&](Vertex v) {
        used[v] = 1;
        for (Vertex w : g.neighbors(v)) --free_deg[w];
    };
    for (Vertex v : path) take(v);
    auto next_from = [&](Vertex tail) {
        Vertex pick = -1;
        for (Vertex w : g.neighbors(tail))
            if (!used[w] && (pick < 0 || free_deg[w] < free_deg[pick])) pick = w;
        return pick;
    };
    for (int side = 0; side < 2; ++side) {
        for (Vertex next = next_from(path.back()); next >= 0; next = next_from(path.back())) {
            take(next);
            path.push_back(next);
        }
        std::reverse(path.begin(), path.end());
    }
}

// Longest cycle readily closed from a path p0 .. pk: the whole path if its
// ends meet or cross (p0 ~ p[i+1], pk ~ p[i]), else the longest chord-closed
// prefix or suffix. Returns an empty order when nothing closes.
inline std::vector<Vertex> close_path(const Graph& g, const std::vector<Vertex>& path) {
    const int k = static_cast<int>(path.size()) - 1;
    if (k < 2) return {};
    const Vertex head = path.front();
    const Vertex tail = path.back();
    if (g.has_edge(head, tail)) return path;

    std::vector<int> pos(g.order(), -1);
    for (int i = 0; i <= k; ++i) pos[path[i]] = i;

    for (Vertex a : g.neighbors(head)) {
        const int j = pos[a];
        if (j < 2 || !g.has_edge(tail, path[j - 1])) continue;
        std::vector<Vertex> out(path.begin(), path.begin() + j);
        out.insert(out.end(), path.rbegin(), path.rend() - j);
        return out;
    }

    int head_reach = -1;
    for (Vertex a : g.neighbors(head))
        if (pos[a] >= 2) head_reach = std::max(head_reach, pos[a]);
    int tail_reach = k + 1;
    for (Vertex a : g.neighbors(tail))
        if (pos[a] >= 0 && pos[a] <= k - 2) tail_reach = std::min(tail_reach, pos[a]);
    const int head_len = head_reach >= 0 ? head_reach + 1 : 0;
    const int tail_len = tail_reach <= k ? k - tail_reach + 1 : 0;
    if (head_len == 0 && tail_len == 0) return {};
    if (head_len >= tail_len) return {path.begin(), path.begin() + head_len};
    return {path.begin() + tail_reach, path.end()};
}

// Re-opens the cycle at an off-cycle neighbour x of some cycle vertex c,
// extends and re-closes; keeps the first strictly longer result.
inline bool reroute_once(const Graph& g, OrientedCycle& c) {
    for (Vertex x = 0; x < g.order(); ++x) {
        if (c.contains(x)) continue;
        for (Vertex at : g.neighbors(x)) {
            if (!c.contains(at)) continue;
            std::vector<Vertex> path{x};
            for (std::size_t i = 0; i < c.size(); ++i) path.push_back(c.at(c.position(at) + i));
            extend_path(g, path);
            auto closed = close_path(g, path);
            if (closed.size() > c.size()) {
                c = OrientedCycle(g, std::move(closed));
                return true;
            }
        }
    }
    return false;
}

// Greedy path, closure, then local moves and re-routing until `target` is met
// or nothing improves. Returns the best cycle found.
inline OrientedCycle grow_long_cycle(const Graph& g, int target) {
    Vertex start = 0;
    for (Vertex v = 1; v < g.order(); ++v)
        if (g.degree(v) < g.degree(start)) start = v;
    std::vector<Vertex> path{start};
    extend_path(g, path);
    auto closed = close_path(g, path);
    if (closed.empty()) throw SearchFailure("find_long_cycle: greedy path does not close");
    OrientedCycle c(g, std::move(closed));
    while (static_cast<int>(c.size()) < std::min(target, g.order())) {
        exhaust_local_moves(g, c);
        if (static_cast<int>(c.size()) >= target) break;
        if (!reroute_once(g, c)) break;
    }
    return c;
}

}  // namespace detail

// A cycle of length >= target in a 2-connected graph with minimum degree > 1.
// Exact below the exact-solver cap, constructive above it.
inline CycleCert find_long_cycle(const Graph& g, int target) {
    if (g.order() < 3 || min_degree(g) < 2 || !is_2_connected(g))
        throw std::invalid_argument("find_long_cycle: graph must be 2-connected with minimum degree > 1");
    CycleCert found = g.order() <= kExactCycleCap ? longest_cycle_exact(g) : detail::grow_long_cycle(g, target).cert();
    if (static_cast<int>(found.length()) < target)
        throw SearchFailure("find_long_cycle: best cycle has length " + std::to_string(found.length()) +
                            ", target " + std::to_string(target));
    return found;
}

}  // namespace perturb
