#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "perturb/graph.hpp"
#include "perturb/random.hpp"

namespace perturb {

// Inverse of the row-major enumeration of pairs u < v.
inline Edge edge_from_index(int n, std::uint64_t k) {
    const double nn = n;
    auto row_start = [n](std::uint64_t u) { return u * (2 * static_cast<std::uint64_t>(n) - u - 1) / 2; };
    auto u = static_cast<std::uint64_t>(std::floor(nn - 0.5 - std::sqrt((nn - 0.5) * (nn - 0.5) - 2.0 * static_cast<double>(k))));
    if (u > static_cast<std::uint64_t>(n - 2)) u = static_cast<std::uint64_t>(n - 2);
    while (u > 0 && row_start(u) > k) --u;
    while (u + 1 < static_cast<std::uint64_t>(n - 1) && row_start(u + 1) <= k) ++u;
    const auto v = u + 1 + (k - row_start(u));
    return {static_cast<Vertex>(u), static_cast<Vertex>(v)};
}

inline std::uint64_t index_of_edge(int n, const Edge& e) {
    const auto u = static_cast<std::uint64_t>(e.u);
    return u * (2 * static_cast<std::uint64_t>(n) - u - 1) / 2 + static_cast<std::uint64_t>(e.v - e.u - 1);
}

// K_{d, n-d} with A = {0..d-1}, B = {d..n-1}.
inline Graph complete_bipartite(int d, int n) {
    if (d < 1 || d > n - 1)
        throw std::invalid_argument("complete_bipartite: need 1 <= d <= n-1 (d=" + std::to_string(d) + ", n=" +
                                    std::to_string(n) + ")");
    Graph g(n);
    for (Vertex a = 0; a < d; ++a)
        for (Vertex b = d; b < n; ++b) g.add_edge(a, b);
    return g;
}

// Cliques on {0 .. n/2 + ceil(o/2) - 1} and {n/2 - floor(o/2) .. n-1}; they
// share exactly `overlap` vertices and cover all n.
inline Graph two_cliques(int n, int overlap) {
    if (n < 2 || n % 2 != 0) throw std::invalid_argument("two_cliques: n must be even and positive");
    if (overlap < 0 || overlap > n / 2) throw std::invalid_argument("two_cliques: overlap must lie in [0, n/2]");
    Graph g(n);
    const int first_end = n / 2 + (overlap + 1) / 2;
    const int second_begin = n / 2 - overlap / 2;
    for (Vertex u = 0; u < first_end; ++u)
        for (Vertex v = u + 1; v < first_end; ++v) g.add_edge(u, v);
    for (Vertex u = second_begin; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

// Binomial random graph by geometric skipping over the pair index space.
inline Graph gnp(int n, double p, RandomSource& rng) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("gnp: p must lie in [0, 1]");
    Graph g(n);
    if (n < 2 || p == 0.0) return g;
    if (p == 1.0) {
        for (Vertex u = 0; u < n; ++u)
            for (Vertex v = u + 1; v < n; ++v) g.add_edge(u, v);
        return g;
    }
    const auto total = static_cast<std::int64_t>(pair_count(static_cast<std::uint64_t>(n)));
    const double log_q = std::log1p(-p);
    std::int64_t idx = -1;
    std::int64_t u = 0;
    std::int64_t row_end = n - 1;  // exclusive end of row u in index space
    while (true) {
        const double r = rng.uniform();
        const double skip = std::floor(std::log1p(-r) / log_q);
        if (skip >= static_cast<double>(total - idx)) break;
        idx += 1 + static_cast<std::int64_t>(skip);
        if (idx >= total) break;
        while (idx >= row_end) {
            ++u;
            row_end += n - 1 - u;
        }
        const std::int64_t v = n - (row_end - idx);
        g.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }
    return g;
}

// m distinct uniformly random pairs, in draw order. Within the sparse branch
// (m <= n(n-1)/4) the output for m is a prefix of the output for any larger m
// under the same source.
inline std::vector<Edge> sample_uniform_edges(int n, std::uint64_t m, RandomSource& rng) {
    const std::uint64_t total = n >= 2 ? pair_count(static_cast<std::uint64_t>(n)) : 0;
    if (m > total)
        throw std::invalid_argument("gnm: m = " + std::to_string(m) + " exceeds n(n-1)/2 = " + std::to_string(total));
    std::vector<Edge> out;
    out.reserve(m);
    if (m == 0) return out;
    if (2 * m <= total) {
        std::unordered_set<std::uint64_t> seen;
        seen.reserve(2 * m);
        while (out.size() < m) {
            const auto k = rng.below(total);
            if (seen.insert(k).second) out.push_back(edge_from_index(n, k));
        }
        return out;
    }
    std::vector<std::uint64_t> idx(total);
    std::iota(idx.begin(), idx.end(), std::uint64_t{0});
    for (std::uint64_t i = 0; i < m; ++i) std::swap(idx[i], idx[i + rng.below(total - i)]);
    for (std::uint64_t i = 0; i < m; ++i) out.push_back(edge_from_index(n, idx[i]));
    return out;
}

inline Graph gnm(int n, std::uint64_t m, RandomSource& rng) {
    const auto edges = sample_uniform_edges(n, m, rng);
    return Graph(n, edges);
}

// Unbounded with-replacement stream of uniform pairs of K_n.
class EdgeStream {
public:
    EdgeStream(int n, RandomSource& rng) : n_(n), total_(n >= 2 ? pair_count(static_cast<std::uint64_t>(n)) : 0), rng_(&rng) {
        if (n < 2) throw std::invalid_argument("EdgeStream: need n >= 2");
    }

    Edge next() { return edge_from_index(n_, rng_->below(total_)); }

    std::uint64_t pair_total() const { return total_; }

private:
    int n_;
    std::uint64_t total_;
    RandomSource* rng_;
};

struct CoupledGraphs {
    Graph uniform;   // ~ G_{n,m}
    Graph binomial;  // ~ G(n,p)
    bool coupled = false;
    double p = 0.0;
};

// Reveal G(n,p) with p = (1+delta) m / C(n,2); if it has at least m edges,
// take a uniform m-subset of them, else fall back to an independent G_{n,m}.
inline CoupledGraphs couple_gnm_gnp(int n, std::uint64_t m, double delta, RandomSource& rng) {
    const std::uint64_t total = n >= 2 ? pair_count(static_cast<std::uint64_t>(n)) : 0;
    if (m < 1 || m > total) throw std::invalid_argument("couple_gnm_gnp: m out of range");
    if (!(delta > 0.0)) throw std::invalid_argument("couple_gnm_gnp: delta must be positive");
    CoupledGraphs out;
    out.p = std::min(1.0, (1.0 + delta) * static_cast<double>(m) / static_cast<double>(total));
    out.binomial = gnp(n, out.p, rng);
    if (out.binomial.edge_count() >= m) {
        auto pool = out.binomial.edges();
        for (std::uint64_t i = 0; i < m; ++i) std::swap(pool[i], pool[i + rng.below(pool.size() - i)]);
        pool.resize(m);
        out.uniform = Graph(n, pool);
        out.coupled = true;
    } else {
        out.uniform = gnm(n, m, rng);
    }
    return out;
}

enum class PerturbationModel { binomial, uniform, stream };

inline std::string to_string(PerturbationModel model) {
    switch (model) {
        case PerturbationModel::binomial: return "binomial";
        case PerturbationModel::uniform: return "uniform";
        case PerturbationModel::stream: return "stream";
    }
    return "unknown";
}

// One random-graph model with its parameter. For `stream`, m with-replacement
// draws are taken and repeats collapse.
struct PerturbationSpec {
    PerturbationModel model = PerturbationModel::uniform;
    double p = 0.0;
    std::uint64_t m = 0;

    static PerturbationSpec binomial(double p) { return {PerturbationModel::binomial, p, 0}; }
    static PerturbationSpec uniform(std::uint64_t m) { return {PerturbationModel::uniform, 0.0, m}; }
    static PerturbationSpec stream(std::uint64_t m) { return {PerturbationModel::stream, 0.0, m}; }

    void validate(int n) const {
        if (model == PerturbationModel::binomial && !(p >= 0.0 && p <= 1.0))
            throw std::invalid_argument("perturbation: p must lie in [0, 1]");
        if (model == PerturbationModel::uniform && m > pair_count(static_cast<std::uint64_t>(std::max(n, 1))))
            throw std::invalid_argument("perturbation: m exceeds n(n-1)/2");
    }

    // Edge density in probability units: p itself, or m / C(n,2).
    double density(int n) const {
        if (model == PerturbationModel::binomial) return p;
        return static_cast<double>(m) / static_cast<double>(pair_count(static_cast<std::uint64_t>(n)));
    }
};

inline std::vector<Edge> sample_perturbation(int n, const PerturbationSpec& spec, RandomSource& rng) {
    spec.validate(n);
    switch (spec.model) {
        case PerturbationModel::binomial: return gnp(n, spec.p, rng).edges();
        case PerturbationModel::uniform: return sample_uniform_edges(n, spec.m, rng);
        case PerturbationModel::stream: {
            EdgeStream stream(n, rng);
            std::vector<Edge> out;
            std::unordered_set<std::uint64_t> seen;
            for (std::uint64_t i = 0; i < spec.m; ++i) {
                const Edge e = stream.next();
                if (seen.insert(index_of_edge(n, e)).second) out.push_back(e);
            }
            return out;
        }
    }
    return {};
}

}  // namespace perturb
