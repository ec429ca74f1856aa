#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "perturb/certificates.hpp"
#include "perturb/graph.hpp"
#include "perturb/oriented_cycle.hpp"

namespace perturb {

// Recipe for absorbing off-cycle v once the non-edge {w, u-} is present.
struct CycleBoostTag {
    Vertex v = -1;
    Vertex w = -1;
    Vertex u = -1;
    friend bool operator==(const CycleBoostTag&, const CycleBoostTag&) = default;
};

// Recipe for the augmenting path u - x^M - x - y - y^M - v once {x, y} is present.
struct MatchingBoostTag {
    Vertex u = -1;
    Vertex x = -1;
    Vertex v = -1;
    Vertex y = -1;
    friend bool operator==(const MatchingBoostTag&, const MatchingBoostTag&) = default;
};

// Distinct non-edges of a host, each with the first recipe found for it.
template <class Tag>
class BoostSet {
public:
    struct Entry {
        Edge edge;
        Tag tag;
    };

    BoostSet() = default;
    BoostSet(int n, std::vector<Vertex> witness)
        : n_(n), words_((n + 63) / 64), witness_(std::move(witness)), bits_(words_ * n, 0) {}

    bool insert(const Edge& e, const Tag& tag) {
        if (contains(e)) return false;
        bits_[e.u * words_ + e.v / 64] |= std::uint64_t{1} << (e.v % 64);
        entries_.push_back({e, tag});
        return true;
    }

    bool contains(const Edge& e) const {
        if (bits_.empty()) return false;
        return bits_[e.u * words_ + e.v / 64] >> (e.v % 64) & 1U;
    }

    const Entry* find(const Edge& e) const {
        if (!contains(e)) return nullptr;
        for (const Entry& entry : entries_)
            if (entry.edge == e) return &entry;
        return nullptr;
    }

    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    const std::vector<Entry>& entries() const { return entries_; }
    // Off-cycle vertex v, or the unmatched pair (u, v).
    const std::vector<Vertex>& witness() const { return witness_; }

private:
    int n_ = 0;
    std::size_t words_ = 0;
    std::vector<Vertex> witness_;
    std::vector<std::uint64_t> bits_;
    std::vector<Entry> entries_;
};

using CycleBoostSet = BoostSet<CycleBoostTag>;
using MatchingBoostSet = BoostSet<MatchingBoostTag>;

// n^2/8 - 4 n eta, written with 2*eta.
inline double cycle_boost_bound(int n, int twice_eta) {
    const double nn = n;
    return nn * nn / 8.0 - 2.0 * nn * twice_eta;
}

// C(n/2 - 3 eta, 2), written with 2*eta; zero once the base drops below 2.
inline double matching_boost_bound(int n, int twice_eta) {
    const double base = (n - 3.0 * twice_eta) / 2.0;
    return base < 2.0 ? 0.0 : base * (base - 1.0) / 2.0;
}

// All non-edges {w, u-} with w in W_v and u in N_C(w) \ {w+}. Requires that
// neither a free insertion nor an exchange extension exists for v.
inline CycleBoostSet cycle_boost_set(const Graph& g, const OrientedCycle& c, Vertex v) {
    detail::require_off_cycle(c, v, "cycle_boost_set");
    if (free_insertion(g, c, v)) throw std::invalid_argument("cycle_boost_set: a free insertion exists for v");
    if (exchange_extension(g, c, v)) throw std::invalid_argument("cycle_boost_set: an exchange extension exists for v");

    CycleBoostSet out(g.order(), {v});
    for (Vertex w : c.order()) {
        if (g.has_edge(v, w) || !g.has_edge(v, c.pred(w)) || !g.has_edge(v, c.succ(w))) continue;
        const Vertex w_next = c.succ(w);
        for (Vertex u : g.neighbors(w)) {
            if (!c.contains(u) || u == w_next) continue;
            const Vertex before = c.pred(u);
            if (!g.has_edge(w, before)) out.insert(Edge(w, before), CycleBoostTag{v, w, u});
        }
    }
    return out;
}

namespace detail {

inline void check_cycle_tag(const Graph& g, const OrientedCycle& c, const CycleBoostTag& t) {
    const int n = g.order();
    auto in_range = [n](Vertex x) { return x >= 0 && x < n; };
    const bool ok = in_range(t.v) && in_range(t.w) && in_range(t.u) && !c.contains(t.v) && c.contains(t.w) &&
                    c.contains(t.u) && t.u != t.w && t.u != c.succ(t.w) && g.has_edge(t.v, c.pred(t.w)) &&
                    g.has_edge(t.v, c.succ(t.w)) && g.has_edge(t.w, t.u);
    if (!ok) throw std::invalid_argument("apply_cycle_boost: stale tag");
}

inline void apply_cycle_boost_inplace(Graph& g, OrientedCycle& c, const CycleBoostTag& t) {
    check_cycle_tag(g, c, t);
    g.add_edge(t.w, c.pred(t.u));
    c = OrientedCycle(g, splice_through(c, t.v, t.w, t.u));
}

}  // namespace detail

// Adds {w, u-} and returns the cycle w+ .. u-, w, u .. w-, v.
inline std::pair<Graph, OrientedCycle> apply_cycle_boost(const Graph& g, const OrientedCycle& c, const CycleBoostTag& tag) {
    Graph next = g;
    OrientedCycle cycle = c;
    detail::apply_cycle_boost_inplace(next, cycle, tag);
    return {std::move(next), std::move(cycle)};
}

namespace detail {

// N_M(u) = { w matched : partner(w) ~ u }, as a membership vector and a sorted list.
inline std::pair<std::vector<char>, std::vector<Vertex>> matched_partners(const Graph& g, const MatchingCert& m, Vertex u) {
    std::vector<char> member(g.order(), 0);
    std::vector<Vertex> list;
    for (Vertex a : g.neighbors(u))
        if (m.matched(a)) {
            member[m.partner(a)] = 1;
            list.push_back(m.partner(a));
        }
    std::sort(list.begin(), list.end());
    return {std::move(member), std::move(list)};
}

}  // namespace detail

// True iff u and v are joined by an M-augmenting path of length 1, 3 or 5.
inline bool has_short_augmenting_path(const Graph& g, const MatchingCert& m, Vertex u, Vertex v) {
    if (g.has_edge(u, v)) return true;
    const auto [in_nu, nu] = detail::matched_partners(g, m, u);
    for (Vertex x : nu)
        if (g.has_edge(x, v)) return true;
    const auto [in_nv, nv] = detail::matched_partners(g, m, v);
    for (Vertex y : nv)
        for (Vertex x : g.neighbors(y))
            if (in_nu[x] && x != m.partner(y)) return true;
    return false;
}

// All non-edges {x, y}, x in N_M(u), y in N_M(v), x != y.
inline MatchingBoostSet matching_boost_set(const Graph& g, const MatchingCert& m, Vertex u, Vertex v) {
    if (m.order() != g.order()) throw std::invalid_argument("matching_boost_set: matching has wrong order");
    if (u == v || u < 0 || v < 0 || u >= g.order() || v >= g.order())
        throw std::invalid_argument("matching_boost_set: need two distinct vertices");
    if (m.matched(u) || m.matched(v)) throw std::invalid_argument("matching_boost_set: u and v must be unmatched");
    if (has_short_augmenting_path(g, m, u, v))
        throw std::invalid_argument("matching_boost_set: an augmenting path of length <= 5 exists");

    MatchingBoostSet out(g.order(), {u, v});
    const auto nu = detail::matched_partners(g, m, u).second;
    const auto nv = detail::matched_partners(g, m, v).second;
    for (Vertex x : nu)
        for (Vertex y : nv)
            if (x != y && !g.has_edge(x, y)) out.insert(Edge(x, y), MatchingBoostTag{u, x, v, y});
    return out;
}

namespace detail {

inline void apply_matching_boost_inplace(Graph& g, MatchingCert& m, const MatchingBoostTag& t) {
    const int n = g.order();
    auto in_range = [n](Vertex a) { return a >= 0 && a < n; };
    const bool ok = in_range(t.u) && in_range(t.v) && in_range(t.x) && in_range(t.y) && t.u != t.v &&
                    !m.matched(t.u) && !m.matched(t.v) && m.matched(t.x) && m.matched(t.y) && t.x != t.y &&
                    m.partner(t.x) != t.y && g.has_edge(t.u, m.partner(t.x)) && g.has_edge(t.v, m.partner(t.y));
    if (!ok) throw std::invalid_argument("apply_matching_boost: stale tag");
    const Vertex xm = m.partner(t.x);
    const Vertex ym = m.partner(t.y);
    g.add_edge(t.x, t.y);
    m.unmatch(t.x);
    m.unmatch(t.y);
    m.match(t.u, xm);
    m.match(t.x, t.y);
    m.match(t.v, ym);
}

}  // namespace detail

// Adds {x, y} and flips the path u - x^M - x - y - y^M - v.
inline std::pair<Graph, MatchingCert> apply_matching_boost(const Graph& g, const MatchingCert& m, const MatchingBoostTag& tag) {
    Graph next = g;
    MatchingCert matching = m;
    detail::apply_matching_boost_inplace(next, matching, tag);
    return {std::move(next), std::move(matching)};
}

}  // namespace perturb
