#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "perturb/certificates.hpp"
#include "perturb/errors.hpp"
#include "perturb/graph.hpp"

namespace perturb {

inline constexpr int kExactCycleCap = 24;
inline constexpr int kPancyclicCap = 20;

namespace detail {

// Subset DP for paths that start at an anchor s and use only vertices above
// s. Local index i stands for vertex s + 1 + i. ends[mask] holds the set of
// local indices v such that some path s -> ... -> v visits exactly mask.
class AnchoredPathDp {
public:
    AnchoredPathDp(const Graph& g, Vertex anchor) : anchor_(anchor), k_(g.order() - 1 - anchor) {
        local_adj_.assign(k_, 0);
        for (int i = 0; i < k_; ++i) {
            const Vertex v = anchor + 1 + i;
            if (g.has_edge(anchor, v)) anchor_adj_ |= 1U << i;
            for (Vertex w : g.neighbors(v))
                if (w > anchor) local_adj_[i] |= 1U << (w - anchor - 1);
        }
    }

    // Fills the table, calling on_closed(mask) for every mask of size >= 2
    // whose path can close back to the anchor. Stops early when it returns true.
    template <class OnClosed>
    void run(std::vector<std::uint32_t>& ends, OnClosed&& on_closed) {
        const std::uint32_t limit = 1U << k_;
        ends.assign(limit, 0);
        for (int i = 0; i < k_; ++i)
            if (anchor_adj_ >> i & 1U) ends[1U << i] = 1U << i;
        for (std::uint32_t mask = 3; mask < limit; ++mask) {
            if (std::has_single_bit(mask)) continue;
            std::uint32_t reach = 0;
            for (std::uint32_t rest = mask; rest != 0; rest &= rest - 1) {
                const int i = std::countr_zero(rest);
                if (ends[mask ^ (1U << i)] & local_adj_[i]) reach |= 1U << i;
            }
            ends[mask] = reach;
            if ((reach & anchor_adj_) && on_closed(mask)) return;
        }
    }

    std::uint32_t anchor_adjacency() const { return anchor_adj_; }
    int width() const { return k_; }

    // Cycle through the anchor covering mask, read back from a filled table.
    CycleCert cycle(const std::vector<std::uint32_t>& ends, std::uint32_t mask) const {
        std::uint32_t candidates = ends[mask] & anchor_adj_;
        int end = std::countr_zero(candidates);
        std::vector<Vertex> reversed;
        while (true) {
            reversed.push_back(anchor_ + 1 + end);
            const std::uint32_t prev = mask ^ (1U << end);
            if (prev == 0) break;
            const int next = std::countr_zero(ends[prev] & local_adj_[end]);
            mask = prev;
            end = next;
        }
        CycleCert cert;
        cert.vertices.push_back(anchor_);
        cert.vertices.insert(cert.vertices.end(), reversed.rbegin(), reversed.rend());
        return cert;
    }

private:
    Vertex anchor_;
    int k_;
    std::uint32_t anchor_adj_ = 0;
    std::vector<std::uint32_t> local_adj_;
};

inline void check_cap(const Graph& g, int cap, const char* who) {
    if (g.order() > cap)
        throw CapacityError(std::string(who) + ": n = " + std::to_string(g.order()) + " exceeds exact cap " +
                            std::to_string(cap));
}

}  // namespace detail

// Hamilton cycle by subset DP anchored at vertex 0; O(2^n n) time.
inline std::optional<CycleCert> hamiltonian_exact(const Graph& g) {
    detail::check_cap(g, kExactCycleCap, "hamiltonian_exact");
    if (g.order() < 3) throw std::invalid_argument("hamiltonian_exact: requires n >= 3");
    detail::AnchoredPathDp dp(g, 0);
    std::vector<std::uint32_t> ends;
    dp.run(ends, [](std::uint32_t) { return false; });
    const std::uint32_t full = (1U << dp.width()) - 1;
    if ((ends[full] & dp.anchor_adjacency()) == 0) return std::nullopt;
    return dp.cycle(ends, full);
}

inline CycleCert longest_cycle_exact(const Graph& g) {
    detail::check_cap(g, kExactCycleCap, "longest_cycle_exact");
    const int n = g.order();
    std::optional<CycleCert> best;
    std::vector<std::uint32_t> ends;
    for (Vertex s = 0; s + 2 < n; ++s) {
        const std::size_t best_len = best ? best->length() : 0;
        if (static_cast<int>(best_len) >= n - s) break;
        detail::AnchoredPathDp dp(g, s);
        std::uint32_t best_mask = 0;
        int best_pop = static_cast<int>(best_len) - 1;
        dp.run(ends, [&](std::uint32_t mask) {
            const int pop = std::popcount(mask);
            if (pop > best_pop) {
                best_pop = pop;
                best_mask = mask;
            }
            return pop + 1 == n - s;
        });
        if (best_mask != 0) best = dp.cycle(ends, best_mask);
        if (best && static_cast<int>(best->length()) == n) break;
    }
    if (!best) throw std::invalid_argument("longest_cycle_exact: graph is acyclic");
    return *best;
}

// Bit L set iff g has a cycle of length L.
inline std::uint64_t cycle_length_set(const Graph& g) {
    detail::check_cap(g, kPancyclicCap, "cycle_length_set");
    const int n = g.order();
    std::uint64_t lengths = 0;
    std::uint64_t all = 0;
    for (int len = 3; len <= n; ++len) all |= std::uint64_t{1} << len;
    std::vector<std::uint32_t> ends;
    for (Vertex s = 0; s + 2 < n && lengths != all; ++s) {
        detail::AnchoredPathDp dp(g, s);
        dp.run(ends, [&](std::uint32_t mask) {
            lengths |= std::uint64_t{1} << (std::popcount(mask) + 1);
            return lengths == all;
        });
    }
    return lengths;
}

inline bool pancyclic_exact(const Graph& g) {
    detail::check_cap(g, kPancyclicCap, "pancyclic_exact");
    if (g.order() < 3) return false;
    const std::uint64_t lengths = cycle_length_set(g);
    for (int len = 3; len <= g.order(); ++len)
        if (!(lengths >> len & 1U)) return false;
    return true;
}

}  // namespace perturb
