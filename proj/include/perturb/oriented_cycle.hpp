#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "perturb/certificates.hpp"
#include "perturb/graph.hpp"

namespace perturb {

// A cycle of a host graph with a fixed orientation; succ/pred follow it.
class OrientedCycle {
public:
    OrientedCycle(const Graph& g, std::vector<Vertex> order) : order_(std::move(order)), position_(g.order(), -1) {
        if (order_.size() < 3) throw std::invalid_argument("OrientedCycle: fewer than 3 vertices");
        for (std::size_t i = 0; i < order_.size(); ++i) {
            const Vertex v = order_[i];
            if (v < 0 || v >= g.order()) throw std::invalid_argument("OrientedCycle: vertex out of range");
            if (position_[v] >= 0) throw std::invalid_argument("OrientedCycle: repeated vertex " + std::to_string(v));
            position_[v] = static_cast<int>(i);
        }
        for (std::size_t i = 0; i < order_.size(); ++i)
            if (!g.has_edge(order_[i], order_[(i + 1) % order_.size()]))
                throw std::invalid_argument("OrientedCycle: " + std::to_string(order_[i]) + " and " +
                                            std::to_string(order_[(i + 1) % order_.size()]) + " are not adjacent");
    }

    std::size_t size() const { return order_.size(); }
    int host_order() const { return static_cast<int>(position_.size()); }
    bool contains(Vertex v) const { return position_[v] >= 0; }
    int position(Vertex v) const { return position_[v]; }
    Vertex at(std::size_t i) const { return order_[i % order_.size()]; }
    Vertex succ(Vertex v) const { return order_[(position_[v] + 1) % order_.size()]; }
    Vertex pred(Vertex v) const { return order_[(position_[v] + order_.size() - 1) % order_.size()]; }
    const std::vector<Vertex>& order() const { return order_; }

    CycleCert cert() const { return CycleCert{order_}; }

    // N_C(v): neighbours of v that lie on the cycle.
    std::vector<Vertex> neighbors_on_cycle(const Graph& g, Vertex v) const {
        std::vector<Vertex> out;
        for (Vertex w : g.neighbors(v))
            if (contains(w)) out.push_back(w);
        return out;
    }

    std::vector<Vertex> off_cycle() const {
        std::vector<Vertex> out;
        for (Vertex v = 0; v < host_order(); ++v)
            if (!contains(v)) out.push_back(v);
        return out;
    }

private:
    std::vector<Vertex> order_;
    std::vector<int> position_;
};

// Orientation-preserving splice that absorbs off-cycle v through w:
// w+ .. u-, w, u .. w-, v. Needs v ~ w-, v ~ w+, w ~ u, w ~ u-, u != w, w+.
inline std::vector<Vertex> splice_through(const OrientedCycle& c, Vertex v, Vertex w, Vertex u) {
    std::vector<Vertex> out;
    out.reserve(c.size() + 1);
    std::size_t i = static_cast<std::size_t>(c.position(w)) + 1;
    for (; c.at(i) != u; ++i) out.push_back(c.at(i));
    out.push_back(w);
    for (i = static_cast<std::size_t>(c.position(u)); c.at(i) != w; ++i) out.push_back(c.at(i));
    out.push_back(v);
    return out;
}

namespace detail {

inline void require_off_cycle(const OrientedCycle& c, Vertex v, const char* who) {
    if (v < 0 || v >= c.host_order()) throw std::out_of_range(std::string(who) + ": vertex out of range");
    if (c.contains(v)) throw std::invalid_argument(std::string(who) + ": vertex " + std::to_string(v) + " is on the cycle");
}

// Cached per-cycle data for exchange moves. For w on the cycle, partner(w) is
// some u with u, u- both cycle neighbours of w (u != w, w+), or -1.
class ExchangeCache {
public:
    ExchangeCache(const Graph& g, const OrientedCycle& c) : g_(g), c_(c), partner_(g.order(), -2) {}

    Vertex partner(Vertex w) {
        Vertex& slot = partner_[w];
        if (slot != -2) return slot;
        slot = -1;
        int best_pos = -1;
        for (Vertex x : g_.neighbors(w)) {
            if (!c_.contains(x)) continue;
            const Vertex u = c_.succ(x);
            if (u == w || !g_.has_edge(w, u)) continue;
            if (best_pos < 0 || c_.position(u) < best_pos) {
                best_pos = c_.position(u);
                slot = u;
            }
        }
        return slot;
    }

private:
    const Graph& g_;
    const OrientedCycle& c_;
    std::vector<Vertex> partner_;
};

inline std::optional<OrientedCycle> free_insertion_impl(const Graph& g, const OrientedCycle& c, Vertex v) {
    int best = -1;
    for (Vertex w : g.neighbors(v))
        if (c.contains(w) && g.has_edge(v, c.pred(w)) && (best < 0 || c.position(w) < best)) best = c.position(w);
    if (best < 0) return std::nullopt;
    std::vector<Vertex> order = c.order();
    order.insert(order.begin() + best, v);
    return OrientedCycle(g, std::move(order));
}

struct ExchangeChoice {
    Vertex w = -1;
    Vertex u = -1;
};

inline std::optional<ExchangeChoice> find_exchange(const Graph& g, const OrientedCycle& c, Vertex v, ExchangeCache& cache) {
    std::optional<ExchangeChoice> best;
    for (Vertex x : g.neighbors(v)) {
        if (!c.contains(x)) continue;
        const Vertex w = c.succ(x);
        if (g.has_edge(v, w) || !g.has_edge(v, c.succ(w))) continue;
        if (best && c.position(w) > c.position(best->w)) continue;
        const Vertex u = cache.partner(w);
        if (u >= 0) best = ExchangeChoice{w, u};
    }
    return best;
}

}  // namespace detail

// Insert v between two cyclically consecutive neighbours w-, w.
inline std::optional<OrientedCycle> free_insertion(const Graph& g, const OrientedCycle& c, Vertex v) {
    detail::require_off_cycle(c, v, "free_insertion");
    return detail::free_insertion_impl(g, c, v);
}

// Swap v in for some w in W_v (w-, w+ ~ v, w !~ v) and re-seat w between two
// consecutive cycle neighbours u-, u of its own.
inline std::optional<OrientedCycle> exchange_extension(const Graph& g, const OrientedCycle& c, Vertex v) {
    detail::require_off_cycle(c, v, "exchange_extension");
    detail::ExchangeCache cache(g, c);
    const auto choice = detail::find_exchange(g, c, v, cache);
    if (!choice) return std::nullopt;
    return OrientedCycle(g, splice_through(c, v, choice->w, choice->u));
}

// Applies free insertions and exchange extensions, lowest off-cycle vertex
// first, until none applies. Returns the number of moves made.
inline int exhaust_local_moves(const Graph& g, OrientedCycle& c) {
    int moves = 0;
    bool moved = true;
    while (moved && static_cast<int>(c.size()) < g.order()) {
        moved = false;
        detail::ExchangeCache cache(g, c);
        for (Vertex v = 0; v < g.order() && !moved; ++v) {
            if (c.contains(v)) continue;
            if (auto next = detail::free_insertion_impl(g, c, v)) {
                c = std::move(*next);
                moved = true;
            } else if (auto choice = detail::find_exchange(g, c, v, cache)) {
                c = OrientedCycle(g, splice_through(c, v, choice->w, choice->u));
                moved = true;
            }
        }
        if (moved) ++moves;
    }
    return moves;
}

}  // namespace perturb
