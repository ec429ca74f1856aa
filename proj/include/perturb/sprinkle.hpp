#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "perturb/boost.hpp"
#include "perturb/certificates.hpp"
#include "perturb/errors.hpp"
#include "perturb/exact_cycles.hpp"
#include "perturb/graph.hpp"
#include "perturb/long_cycle.hpp"
#include "perturb/matching.hpp"
#include "perturb/models.hpp"
#include "perturb/oriented_cycle.hpp"
#include "perturb/random.hpp"

namespace perturb {

enum class SprinkleMode { certified, heuristic };
enum class SprinkleOutcome { success, cap_exceeded, precondition_failed };

inline std::string to_string(SprinkleMode mode) { return mode == SprinkleMode::certified ? "certified" : "heuristic"; }

inline std::string to_string(SprinkleOutcome outcome) {
    switch (outcome) {
        case SprinkleOutcome::success: return "success";
        case SprinkleOutcome::cap_exceeded: return "cap_exceeded";
        case SprinkleOutcome::precondition_failed: return "precondition_failed";
    }
    return "unknown";
}

// max(3, ceil(log2 log2 n)): a slowly growing initial sprinkle.
inline std::uint64_t default_initial_sprinkle(int n) {
    const double ll = n > 2 ? std::ceil(std::log2(std::log2(static_cast<double>(n)))) : 0.0;
    return static_cast<std::uint64_t>(std::max(3.0, ll));
}

struct SprinkleConfig {
    std::optional<std::uint64_t> m0;  // defaults to default_initial_sprinkle(n)
    std::uint64_t lambda = 0;
    SprinkleMode mode = SprinkleMode::certified;
    int max_rounds = 1 << 20;
    std::uint64_t max_samples = 50'000'000;
    bool keep_final = false;  // retain the final graph and certificate
};

struct SprinkleRound {
    int structure_size = 0;  // cycle length or matched vertices before the round
    std::size_t boost_size = 0;
    std::uint64_t samples = 0;  // Y_i
    Edge hit;
};

struct SprinkleTrace {
    enum class Kind { cycle, matching } kind = Kind::cycle;
    int n = 0;
    int twice_eta = 0;
    std::uint64_t initial_sprinkle = 0;
    int initial_size = 0;
    int final_size = 0;
    std::vector<SprinkleRound> rounds;
    std::uint64_t total_samples = 0;  // Y
    SprinkleOutcome outcome = SprinkleOutcome::precondition_failed;
    std::string note;
    int free_moves = 0;
    int bound_violations = 0;  // certified rounds whose boost set fell below the lemma bound
    double sample_bound = 0.0;  // 2 eta / (1/4 - 8 eta / n) + lambda
    std::optional<Graph> final_graph;
    std::optional<CycleCert> final_cycle;
    std::optional<MatchingCert> final_matching;

    bool success() const { return outcome == SprinkleOutcome::success; }
};

namespace detail {

// Certified runs need delta(h) >= n/2 - eta with 1/2 <= eta <= n/64.
inline int certified_twice_eta(const Graph& h) { return std::max(1, twice_eta(h)); }

inline bool certified_range(const Graph& h) { return 32 * certified_twice_eta(h) <= h.order(); }

inline double theorem_sample_bound(int n, int twice_eta, std::uint64_t lambda) {
    const double eta = twice_eta / 2.0;
    const double rate = 0.25 - 8.0 * eta / n;
    return rate > 0.0 ? 2.0 * eta / rate + static_cast<double>(lambda) : INFINITY;
}

inline SprinkleTrace start_trace(const Graph& h, const SprinkleConfig& cfg, SprinkleTrace::Kind kind) {
    SprinkleTrace trace;
    trace.kind = kind;
    trace.n = h.order();
    trace.twice_eta = h.order() > 0 ? certified_twice_eta(h) : 0;
    trace.initial_sprinkle = cfg.m0.value_or(default_initial_sprinkle(h.order()));
    trace.sample_bound = theorem_sample_bound(trace.n, trace.twice_eta, cfg.lambda);
    return trace;
}

// Draws with replacement until an edge of `boost` appears, adding every draw
// to g. Returns the hit, or nothing once the sample budget is spent.
template <class Tag>
std::optional<typename BoostSet<Tag>::Entry> sample_until_hit(Graph& g, const BoostSet<Tag>& boost, EdgeStream& stream,
                                                              SprinkleTrace& trace, SprinkleRound& round,
                                                              std::uint64_t max_samples) {
    while (trace.total_samples < max_samples) {
        const Edge e = stream.next();
        ++round.samples;
        ++trace.total_samples;
        g.add_edge(e);
        if (const auto* entry = boost.find(e)) return *entry;
    }
    return std::nullopt;
}

}  // namespace detail

// Cycle process: G0 = h u G_{n,m0}, a long cycle in G0, then rounds that each
// absorb one off-cycle vertex through the first sampled boost edge.
inline SprinkleTrace sprinkle_hamiltonian(const Graph& h, const SprinkleConfig& cfg, RandomSource& rng) {
    const int n = h.order();
    if (n < 3) throw std::invalid_argument("sprinkle_hamiltonian: need n >= 3");
    SprinkleTrace trace = detail::start_trace(h, cfg, SprinkleTrace::Kind::cycle);
    const bool certified = cfg.mode == SprinkleMode::certified;
    if (certified && !detail::certified_range(h)) {
        trace.note = "degree condition outside 1/2 <= eta <= n/64";
        return trace;
    }

    Graph g = h;
    for (const Edge& e : sample_uniform_edges(n, trace.initial_sprinkle, rng)) g.add_edge(e);
    if (!is_2_connected(g)) {
        trace.note = "initial graph is not 2-connected";
        return trace;
    }

    const int target = std::min(n, 2 * min_degree(h));
    std::optional<OrientedCycle> cycle;
    if (n <= kExactCycleCap) {
        cycle.emplace(g, longest_cycle_exact(g).vertices);
    } else {
        auto grown = detail::grow_long_cycle(g, target);
        if (certified && static_cast<int>(grown.size()) < target) {
            trace.note = "long-cycle search stopped at " + std::to_string(grown.size()) + " < " + std::to_string(target);
            return trace;
        }
        cycle.emplace(std::move(grown));
    }
    OrientedCycle& c = *cycle;
    trace.initial_size = static_cast<int>(c.size());

    EdgeStream stream(n, rng);
    const double bound = cycle_boost_bound(n, trace.twice_eta);
    trace.outcome = SprinkleOutcome::cap_exceeded;
    while (true) {
        trace.free_moves += exhaust_local_moves(g, c);
        if (static_cast<int>(c.size()) == n) {
            trace.outcome = SprinkleOutcome::success;
            break;
        }
        if (static_cast<int>(trace.rounds.size()) >= cfg.max_rounds) {
            trace.note = "round cap reached";
            break;
        }
        const Vertex v = c.off_cycle().front();
        const CycleBoostSet boost = cycle_boost_set(g, c, v);
        if (boost.empty()) {
            if (!certified && n <= kExactCycleCap) {
                const auto longest = longest_cycle_exact(g);
                if (longest.length() > c.size()) {
                    c = OrientedCycle(g, longest.vertices);
                    continue;
                }
            }
            if (certified) ++trace.bound_violations;
            trace.note = "empty boost set";
            break;
        }
        if (certified && static_cast<int>(c.size()) >= n - trace.twice_eta && static_cast<double>(boost.size()) < bound)
            ++trace.bound_violations;

        SprinkleRound round;
        round.structure_size = static_cast<int>(c.size());
        round.boost_size = boost.size();
        const auto hit = detail::sample_until_hit(g, boost, stream, trace, round, cfg.max_samples);
        if (!hit) {
            trace.rounds.push_back(round);
            trace.note = "sample cap reached";
            break;
        }
        round.hit = hit->edge;
        trace.rounds.push_back(round);
        detail::apply_cycle_boost_inplace(g, c, hit->tag);
    }
    trace.final_size = static_cast<int>(c.size());
    if (cfg.keep_final) {
        trace.final_cycle = c.cert();
        trace.final_graph = std::move(g);
    }
    return trace;
}

// Matching process: a maximum matching of G0, then rounds that each add the
// first sampled boost edge for the two lowest unmatched vertices.
inline SprinkleTrace sprinkle_pm(const Graph& h, const SprinkleConfig& cfg, RandomSource& rng) {
    const int n = h.order();
    if (n < 2 || n % 2 != 0) throw std::invalid_argument("sprinkle_pm: n must be even and positive");
    SprinkleTrace trace = detail::start_trace(h, cfg, SprinkleTrace::Kind::matching);
    const bool certified = cfg.mode == SprinkleMode::certified;
    // Each round gains two matched vertices, so k <= eta halves the bound.
    trace.sample_bound = detail::theorem_sample_bound(n, trace.twice_eta, cfg.lambda) / 2.0;
    if (certified && !detail::certified_range(h)) {
        trace.note = "degree condition outside 1/2 <= eta <= n/64";
        return trace;
    }

    Graph g = h;
    for (const Edge& e : sample_uniform_edges(n, trace.initial_sprinkle, rng)) g.add_edge(e);
    if (n >= 3 && !is_2_connected(g)) {
        trace.note = "initial graph is not 2-connected";
        return trace;
    }

    MatchingCert m = max_matching(g);
    trace.initial_size = static_cast<int>(2 * m.size());
    EdgeStream stream(n, rng);
    const double bound = matching_boost_bound(n, trace.twice_eta);
    trace.outcome = SprinkleOutcome::cap_exceeded;
    while (true) {
        if (static_cast<int>(2 * m.size()) == n) {
            trace.outcome = SprinkleOutcome::success;
            break;
        }
        if (static_cast<int>(trace.rounds.size()) >= cfg.max_rounds) {
            trace.note = "round cap reached";
            break;
        }
        const auto free = m.unmatched();
        const MatchingBoostSet boost = matching_boost_set(g, m, free[0], free[1]);
        if (boost.empty()) {
            if (certified) ++trace.bound_violations;
            trace.note = "empty boost set";
            break;
        }
        if (certified && static_cast<int>(2 * m.size()) >= n - trace.twice_eta &&
            static_cast<double>(boost.size()) < bound)
            ++trace.bound_violations;

        SprinkleRound round;
        round.structure_size = static_cast<int>(2 * m.size());
        round.boost_size = boost.size();
        const auto hit = detail::sample_until_hit(g, boost, stream, trace, round, cfg.max_samples);
        if (!hit) {
            trace.rounds.push_back(round);
            trace.note = "sample cap reached";
            break;
        }
        round.hit = hit->edge;
        trace.rounds.push_back(round);
        detail::apply_matching_boost_inplace(g, m, hit->tag);
        // Draws that missed the boost set may still open augmenting paths.
        const std::size_t before = m.size();
        m = augment_to_maximum(g, m);
        trace.free_moves += static_cast<int>(m.size() - before);
    }
    trace.final_size = static_cast<int>(2 * m.size());
    if (cfg.keep_final) {
        trace.final_matching = m;
        trace.final_graph = std::move(g);
    }
    return trace;
}

}  // namespace perturb
