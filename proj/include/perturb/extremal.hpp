#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "perturb/graph.hpp"
#include "perturb/linear_forest.hpp"
#include "perturb/matching.hpp"

namespace perturb {

namespace detail {

inline void check_extremal_args(int n, int d, const char* who) {
    if (n < 3 || d < 1) throw std::invalid_argument(std::string(who) + ": need n >= 3 and d >= 1");
    if (2 * d > n) throw std::invalid_argument(std::string(who) + ": d = " + std::to_string(d) + " exceeds n/2");
}

// Perturbation edges with both ends in B = {d..n-1}, relabelled onto the
// vertices they touch.
inline Graph edges_inside_b(int n, int d, std::span<const Edge> r) {
    std::vector<int> label(n, -1);
    std::vector<Edge> local;
    int next = 0;
    for (const Edge& e : r) {
        if (e.u < d || e.v < d) continue;
        if (e.v >= n) throw std::out_of_range("extremal predicate: edge endpoint out of range");
        if (label[e.u] < 0) label[e.u] = next++;
        if (label[e.v] < 0) label[e.v] = next++;
        local.emplace_back(label[e.u], label[e.v]);
    }
    Graph g(next);
    for (const Edge& e : local) g.add_edge(e);
    return g;
}

}  // namespace detail

// Hamiltonicity of K_{d,n-d} u r, decided by whether r[B] holds a linear
// forest with n - 2d edges. Edges of r touching A are irrelevant.
inline bool extremal_ham_predicate(int n, int d, std::span<const Edge> r) {
    detail::check_extremal_args(n, d, "extremal_ham_predicate");
    const std::size_t need = static_cast<std::size_t>(n - 2 * d);
    if (need == 0) return true;
    const Graph inside = detail::edges_inside_b(n, d, r);
    if (inside.edge_count() < need) return false;
    return max_linear_forest(inside).size() >= need;
}

inline bool extremal_ham_predicate(int n, int d, const Graph& r) {
    if (r.order() != n) throw std::invalid_argument("extremal_ham_predicate: perturbation has wrong order");
    const auto edges = r.edges();
    return extremal_ham_predicate(n, d, edges);
}

// Perfect matching in K_{d,n-d} u r: A absorbs any d vertices of B, so the
// rest of B needs a matching of size n/2 - d inside r[B].
inline bool extremal_pm_predicate(int n, int d, std::span<const Edge> r) {
    if (n % 2 != 0) throw std::invalid_argument("extremal_pm_predicate: n must be even");
    detail::check_extremal_args(n, d, "extremal_pm_predicate");
    const std::size_t need = static_cast<std::size_t>(n / 2 - d);
    if (need == 0) return true;
    const Graph inside = detail::edges_inside_b(n, d, r);
    if (inside.edge_count() < need) return false;
    return max_matching(inside).size() >= need;
}

inline bool extremal_pm_predicate(int n, int d, const Graph& r) {
    if (r.order() != n) throw std::invalid_argument("extremal_pm_predicate: perturbation has wrong order");
    const auto edges = r.edges();
    return extremal_pm_predicate(n, d, edges);
}

}  // namespace perturb
