#pragma once

#include <vector>

#include "perturb/certificates.hpp"
#include "perturb/graph.hpp"

namespace perturb {

namespace detail {

// Edmonds' blossom search, one alternating-tree BFS per free root.
class BlossomSearch {
public:
    BlossomSearch(const Graph& g, std::vector<Vertex>& mate)
        : g_(g), n_(g.order()), mate_(mate), parent_(n_), base_(n_), used_(n_), blossom_(n_) {}

    // Grows the matching along one augmenting path from root, if any.
    bool augment_from(Vertex root) {
        Vertex end = find_path(root);
        if (end < 0) return false;
        while (end >= 0) {
            const Vertex pv = parent_[end];
            const Vertex next = mate_[pv];
            mate_[end] = pv;
            mate_[pv] = end;
            end = next;
        }
        return true;
    }

private:
    Vertex lca(Vertex a, Vertex b) {
        std::vector<char> seen(n_, 0);
        while (true) {
            a = base_[a];
            seen[a] = 1;
            if (mate_[a] < 0) break;
            a = parent_[mate_[a]];
        }
        while (true) {
            b = base_[b];
            if (seen[b]) return b;
            b = parent_[mate_[b]];
        }
    }

    void mark_path(Vertex v, Vertex b, Vertex child) {
        while (base_[v] != b) {
            blossom_[base_[v]] = blossom_[base_[mate_[v]]] = 1;
            parent_[v] = child;
            child = mate_[v];
            v = parent_[mate_[v]];
        }
    }

    Vertex find_path(Vertex root) {
        std::fill(used_.begin(), used_.end(), 0);
        std::fill(parent_.begin(), parent_.end(), -1);
        for (Vertex i = 0; i < n_; ++i) base_[i] = i;
        used_[root] = 1;
        std::vector<Vertex> queue{root};
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const Vertex v = queue[head];
            for (Vertex to : g_.neighbors(v)) {
                if (base_[v] == base_[to] || mate_[v] == to) continue;
                if (to == root || (mate_[to] >= 0 && parent_[mate_[to]] >= 0)) {
                    const Vertex cur = lca(v, to);
                    std::fill(blossom_.begin(), blossom_.end(), 0);
                    mark_path(v, cur, to);
                    mark_path(to, cur, v);
                    for (Vertex i = 0; i < n_; ++i) {
                        if (!blossom_[base_[i]]) continue;
                        base_[i] = cur;
                        if (!used_[i]) {
                            used_[i] = 1;
                            queue.push_back(i);
                        }
                    }
                } else if (parent_[to] < 0) {
                    parent_[to] = v;
                    if (mate_[to] < 0) return to;
                    used_[mate_[to]] = 1;
                    queue.push_back(mate_[to]);
                }
            }
        }
        return -1;
    }

    const Graph& g_;
    int n_;
    std::vector<Vertex>& mate_;
    std::vector<Vertex> parent_;
    std::vector<Vertex> base_;
    std::vector<char> used_;
    std::vector<char> blossom_;
};

}  // namespace detail

// Maximum matching reached from `start` by augmenting paths only, so every
// vertex matched in `start` stays matched.
inline MatchingCert augment_to_maximum(const Graph& g, const MatchingCert& start) {
    std::vector<Vertex> mate(g.order(), -1);
    for (Vertex v = 0; v < g.order(); ++v) mate[v] = start.partner(v);
    detail::BlossomSearch search(g, mate);
    for (Vertex v = 0; v < g.order(); ++v)
        if (mate[v] < 0 && g.degree(v) > 0) search.augment_from(v);
    MatchingCert out(g.order());
    for (Vertex v = 0; v < g.order(); ++v)
        if (mate[v] > v) out.match(v, mate[v]);
    return out;
}

// Greedy seed followed by blossom augmentation.
inline MatchingCert max_matching(const Graph& g) {
    MatchingCert greedy(g.order());
    for (Vertex u = 0; u < g.order(); ++u) {
        if (greedy.matched(u)) continue;
        for (Vertex w : g.neighbors(u))
            if (!greedy.matched(w)) {
                greedy.match(u, w);
                break;
            }
    }
    return augment_to_maximum(g, greedy);
}

}  // namespace perturb
