#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "perturb/errors.hpp"
#include "perturb/exact_cycles.hpp"
#include "perturb/extremal.hpp"
#include "perturb/graph.hpp"
#include "perturb/linear_forest.hpp"
#include "perturb/matching.hpp"
#include "perturb/models.hpp"
#include "perturb/parallel.hpp"
#include "perturb/random.hpp"
#include "perturb/sprinkle.hpp"

namespace perturb {

enum class HostFamily { bipartite, two_cliques, custom };
enum class Property { ham, pm, two_connected, linear_forest };

inline std::string to_string(HostFamily family) {
    switch (family) {
        case HostFamily::bipartite: return "bipartite";
        case HostFamily::two_cliques: return "two-cliques";
        case HostFamily::custom: return "custom";
    }
    return "unknown";
}

inline std::string to_string(Property property) {
    switch (property) {
        case Property::ham: return "ham";
        case Property::pm: return "pm";
        case Property::two_connected: return "2conn";
        case Property::linear_forest: return "linear-forest";
    }
    return "unknown";
}

inline Property parse_property(const std::string& name) {
    if (name == "ham") return Property::ham;
    if (name == "pm") return Property::pm;
    if (name == "2conn") return Property::two_connected;
    if (name == "linear-forest") return Property::linear_forest;
    throw std::invalid_argument("unknown property '" + name + "'");
}

// The deterministic host of an experiment. For two_cliques, `param` is the
// overlap; for bipartite it is |A| = d.
struct HostSpec {
    HostFamily family = HostFamily::bipartite;
    int n = 0;
    int param = 0;
    std::optional<Graph> graph;  // custom hosts only

    static HostSpec bipartite(int n, int d) { return {HostFamily::bipartite, n, d, std::nullopt}; }
    static HostSpec bipartite_eta(int n, int twice_eta) {
        if ((n - twice_eta) % 2 != 0) throw std::invalid_argument("bipartite host: n - 2 eta must be even");
        return bipartite(n, (n - twice_eta) / 2);
    }
    static HostSpec two_cliques(int n, int overlap) { return {HostFamily::two_cliques, n, overlap, std::nullopt}; }
    static HostSpec custom(Graph g) {
        const int n = g.order();
        return {HostFamily::custom, n, 0, std::move(g)};
    }

    Graph build() const {
        switch (family) {
            case HostFamily::bipartite: return complete_bipartite(param, n);
            case HostFamily::two_cliques: return perturb::two_cliques(n, param);
            case HostFamily::custom:
                if (!graph) throw std::logic_error("HostSpec: custom host without a graph");
                return *graph;
        }
        throw std::logic_error("HostSpec: unknown family");
    }

    // Minimum degree of the host.
    int d() const {
        switch (family) {
            case HostFamily::bipartite: return std::min(param, n - param);
            case HostFamily::two_cliques: return n / 2 + param / 2 - 1;
            case HostFamily::custom: return min_degree(build());
        }
        return 0;
    }

    int twice_eta() const { return n - 2 * d(); }
    double eta() const { return twice_eta() / 2.0; }
};

// 95% Wilson score interval for `successes` out of `trials`.
struct Interval {
    double lo = 0.0;
    double hi = 1.0;
};

inline constexpr double kWilsonZ = 1.959963984540054;

inline Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = kWilsonZ) {
    if (successes > trials) throw std::invalid_argument("wilson_interval: successes exceed trials");
    if (trials == 0) return {0.0, 1.0};
    const double n = static_cast<double>(trials);
    const double f = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (f + z2 / (2.0 * n)) / denom;
    const double half = z / denom * std::sqrt(f * (1.0 - f) / n + z2 / (4.0 * n * n));
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

enum class Verdict : signed char { fail = 0, success = 1, aborted = 2 };

struct TrialRecord {
    int trial = 0;
    std::uint64_t seed = 0;
    Verdict verdict = Verdict::fail;
    double seconds = 0.0;
};

// One probe: a fixed perturbation applied to `trials` independent copies.
// Aborted trials (component cap hit) are excluded from `trials`.
struct ProbeResult {
    std::string family;
    int n = 0;
    int d = 0;
    double eta = 0.0;
    PerturbationModel model = PerturbationModel::uniform;
    std::uint64_t m = 0;
    double p = 0.0;
    Property property = Property::ham;
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    std::uint64_t aborted = 0;
    std::vector<TrialRecord> records;

    double freq() const { return trials == 0 ? 0.0 : static_cast<double>(successes) / static_cast<double>(trials); }
    Interval wilson() const { return wilson_interval(successes, trials); }
};

struct ExperimentOptions {
    int threads = 1;
    bool keep_records = false;
};

namespace detail {

// Decides one trial given the sampled perturbation edges.
class TrialOracle {
public:
    TrialOracle(const HostSpec& host, Property property) : host_(host), property_(property), d_(host.d()) {
        if (property == Property::linear_forest) {
            if (host.family != HostFamily::bipartite)
                throw std::invalid_argument("linear-forest trials need the bipartite family");
            return;
        }
        if (property == Property::pm && host.n % 2 != 0) throw std::invalid_argument("pm trials need even n");
        if (host.family == HostFamily::bipartite && property != Property::two_connected) return;
        if (property == Property::ham && host.n > kExactCycleCap)
            throw CapacityError("ham trials on " + to_string(host.family) + " hosts need n <= " +
                                std::to_string(kExactCycleCap));
        if (property == Property::two_connected && host.n < 3)
            throw std::invalid_argument("2conn trials need n >= 3");
        built_ = host.build();
    }

    // Vertex count the perturbation is drawn on.
    int sample_order() const { return property_ == Property::linear_forest ? host_.n - d_ : host_.n; }

    bool operator()(const std::vector<Edge>& r) const {
        if (property_ == Property::linear_forest) {
            const Graph inside(sample_order(), r);
            return max_linear_forest(inside).size() >= static_cast<std::size_t>(host_.n - 2 * d_);
        }
        if (!built_) {
            if (property_ == Property::ham) return extremal_ham_predicate(host_.n, host_.param, r);
            return extremal_pm_predicate(host_.n, host_.param, r);
        }
        Graph g = *built_;
        for (const Edge& e : r) g.add_edge(e);
        switch (property_) {
            case Property::ham: return hamiltonian_exact(g).has_value();
            case Property::pm: return 2 * max_matching(g).size() == static_cast<std::size_t>(g.order());
            case Property::two_connected: return is_2_connected(g);
            case Property::linear_forest: break;
        }
        return false;
    }

private:
    HostSpec host_;
    Property property_;
    int d_;
    std::optional<Graph> built_;
};

inline ProbeResult empty_probe(const HostSpec& host, Property property, const PerturbationSpec& spec, int sample_n) {
    ProbeResult out;
    out.family = to_string(host.family);
    out.n = host.n;
    out.d = host.d();
    out.eta = host.eta();
    out.model = spec.model;
    out.m = spec.model == PerturbationModel::binomial ? 0 : spec.m;
    out.p = spec.density(sample_n);
    out.property = property;
    return out;
}

// Trial t always draws from master.child(t), whatever the probe: probes share
// randomness, and under the uniform model a larger m extends a smaller one.
inline ProbeResult run_probe(const TrialOracle& oracle, const HostSpec& host, Property property,
                             const PerturbationSpec& spec, int trials, const RandomSource& master,
                             const ExperimentOptions& opts) {
    const int sample_n = oracle.sample_order();
    spec.validate(sample_n);
    ProbeResult out = empty_probe(host, property, spec, sample_n);
    auto records = run_indexed(trials, opts.threads, [&](int t) {
        RandomSource rng = master.child(static_cast<std::uint64_t>(t));
        TrialRecord rec{t, rng.seed(), Verdict::fail, 0.0};
        const auto start = std::chrono::steady_clock::now();
        const auto edges = sample_perturbation(sample_n, spec, rng);
        try {
            rec.verdict = oracle(edges) ? Verdict::success : Verdict::fail;
        } catch (const CapacityError&) {
            if (property != Property::linear_forest) throw;
            rec.verdict = Verdict::aborted;
        }
        rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return rec;
    });
    for (const auto& rec : records) {
        if (rec.verdict == Verdict::aborted) {
            ++out.aborted;
            continue;
        }
        ++out.trials;
        if (rec.verdict == Verdict::success) ++out.successes;
    }
    if (opts.keep_records) out.records = std::move(records);
    return out;
}

}  // namespace detail

// Frequency of `property` in host + perturbation over `trials` seeded trials.
inline ProbeResult estimate_probability(const HostSpec& host, const PerturbationSpec& spec, Property property,
                                        int trials, std::uint64_t master_seed, const ExperimentOptions& opts = {}) {
    if (trials < 1) throw std::invalid_argument("estimate_probability: trials must be positive");
    const detail::TrialOracle oracle(host, property);
    return detail::run_probe(oracle, host, property, spec, trials, RandomSource(master_seed), opts);
}

inline ProbeResult two_connectivity_experiment(const Graph& h, std::uint64_t m, int trials, std::uint64_t master_seed,
                                               const ExperimentOptions& opts = {}) {
    return estimate_probability(HostSpec::custom(h), PerturbationSpec::uniform(m), Property::two_connected, trials,
                                master_seed, opts);
}

struct ThresholdEstimate {
    HostSpec host;
    Property property = Property::ham;
    double target = 0.5;
    std::vector<ProbeResult> probes;  // sorted by m
    std::uint64_t bracket_lo = 0;
    std::uint64_t bracket_hi = 0;
    double m_star = 0.0;
    double p_star = 0.0;
    double predicted_m = 0.0;
    double predicted_p = 0.0;
    std::uint64_t aborted = 0;
    std::uint64_t attempted = 0;
    bool unreliable = false;  // more than 5% of trials hit the component cap

    double ratio() const { return predicted_m > 0.0 ? m_star / predicted_m : NAN; }
};

// Predicted sharp thresholds: 16 eta / n^2 (Hamiltonicity, linear forest in B)
// and 8 eta / n^2 (perfect matching) in probability units; 8 eta and 4 eta in
// edges of K_n. Linear-forest m counts edges of K_{n-d}.
inline std::pair<double, double> predicted_threshold(const HostSpec& host, Property property) {
    const double n = host.n;
    const double eta = host.eta();
    switch (property) {
        case Property::ham: return {8.0 * eta, 16.0 * eta / (n * n)};
        case Property::pm: return {4.0 * eta, 8.0 * eta / (n * n)};
        case Property::linear_forest: {
            const double p = 16.0 * eta / (n * n);
            return {p * static_cast<double>(pair_count(static_cast<std::uint64_t>(host.n - host.d()))), p};
        }
        case Property::two_connected: return {0.0, 0.0};
    }
    return {0.0, 0.0};
}

struct ThresholdOptions {
    double target = 0.5;
    std::optional<std::uint64_t> lo;  // default 0
    std::optional<std::uint64_t> hi;  // default ceil(4 * predicted m)
    int threads = 1;
};

// Bisection on m in the uniform model until hi - lo <= max(2, 0.02 m*).
// Frequencies are monotone in m because probes share trial seeds.
inline ThresholdEstimate locate_threshold(const HostSpec& host, Property property, int trials,
                                          std::uint64_t master_seed, const ThresholdOptions& topts = {}) {
    if (trials < 1) throw std::invalid_argument("locate_threshold: trials must be positive");
    if (!(topts.target > 0.0 && topts.target < 1.0)) throw std::invalid_argument("locate_threshold: target outside (0, 1)");
    const detail::TrialOracle oracle(host, property);
    const RandomSource master(master_seed);
    const ExperimentOptions opts{topts.threads, false};
    const std::uint64_t pairs = pair_count(static_cast<std::uint64_t>(oracle.sample_order()));

    ThresholdEstimate est;
    est.host = host;
    est.property = property;
    est.target = topts.target;
    std::tie(est.predicted_m, est.predicted_p) = predicted_threshold(host, property);

    std::uint64_t lo = topts.lo.value_or(0);
    std::uint64_t hi;
    if (topts.hi) {
        hi = *topts.hi;
    } else {
        if (est.predicted_m <= 0.0) throw std::invalid_argument("locate_threshold: no prediction, give an explicit bracket");
        hi = static_cast<std::uint64_t>(std::ceil(4.0 * est.predicted_m));
    }
    hi = std::min(hi, pairs);
    if (lo >= hi) throw std::invalid_argument("locate_threshold: empty bracket");

    std::map<std::uint64_t, ProbeResult> seen;
    auto probe = [&](std::uint64_t m) -> const ProbeResult& {
        auto it = seen.find(m);
        if (it == seen.end())
            it = seen.emplace(m, detail::run_probe(oracle, host, property, PerturbationSpec::uniform(m), trials, master, opts))
                     .first;
        return it->second;
    };
    if (probe(lo).freq() >= topts.target || probe(hi).freq() < topts.target)
        throw std::runtime_error("locate_threshold: probes at m = " + std::to_string(lo) + " and " + std::to_string(hi) +
                                 " do not bracket frequency " + std::to_string(topts.target) + " (got " +
                                 std::to_string(probe(lo).freq()) + ", " + std::to_string(probe(hi).freq()) + ")");
    auto width_ok = [&] {
        const double mid = (static_cast<double>(lo) + static_cast<double>(hi)) / 2.0;
        return static_cast<double>(hi - lo) <= std::max(2.0, 0.02 * mid);
    };
    while (!width_ok()) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        if (probe(mid).freq() >= topts.target)
            hi = mid;
        else
            lo = mid;
    }
    est.bracket_lo = lo;
    est.bracket_hi = hi;
    est.m_star = (static_cast<double>(lo) + static_cast<double>(hi)) / 2.0;
    est.p_star = est.m_star / static_cast<double>(pairs);
    for (auto& [m, result] : seen) {
        est.aborted += result.aborted;
        est.attempted += result.trials + result.aborted;
        est.probes.push_back(std::move(result));
    }
    est.unreliable = 20 * est.aborted > est.attempted;
    return est;
}

// Threshold for G(n-d, p) to hold a linear forest with n - 2d edges, d = round(alpha n),
// next to the perfect-matching threshold of K_{d,n-d} at the same alpha.
struct LinearForestScan {
    ThresholdEstimate forest;
    std::optional<ThresholdEstimate> pm;
    double gap() const { return pm ? forest.p_star / pm->p_star : NAN; }
};

inline LinearForestScan linear_forest_threshold_scan(double alpha, int n, int trials, std::uint64_t master_seed,
                                                     const ThresholdOptions& topts = {}, bool with_pm = true) {
    if (!(alpha > 0.0 && alpha < 0.5)) throw std::invalid_argument("linear_forest_threshold_scan: alpha outside (0, 1/2)");
    const int d = static_cast<int>(std::lround(alpha * n));
    if (d < 1 || 2 * d >= n) throw std::invalid_argument("linear_forest_threshold_scan: alpha n rounds outside [1, n/2)");
    const HostSpec host = HostSpec::bipartite(n, d);
    LinearForestScan out{locate_threshold(host, Property::linear_forest, trials, master_seed, topts), std::nullopt};
    if (with_pm && n % 2 == 0) {
        ThresholdOptions pm_opts = topts;
        pm_opts.lo.reset();
        pm_opts.hi.reset();
        out.pm = locate_threshold(host, Property::pm, trials, master_seed, pm_opts);
    }
    return out;
}

// Sprinkle-run statistics. Bounds per round: mean 8 and variance 56 draws,
// with at most 2 eta (cycle) or eta (matching) rounds.
struct RoundFit {
    int round = 0;  // 1-based
    int runs = 0;
    double mean_samples = 0.0;
    double mean_expected = 0.0;  // mean of C(n,2) / |boost set|
};

struct YStatistics {
    SprinkleTrace::Kind kind = SprinkleTrace::Kind::cycle;
    int runs = 0;
    int successes = 0;
    double mean = 0.0;
    double variance = 0.0;  // unbiased
    double se_mean = 0.0;
    double se_variance = 0.0;
    std::vector<std::pair<double, double>> quantiles;  // (q, value)
    int max_rounds = 0;
    double mean_rounds = 0.0;
    int bound_violations = 0;
    double mean_bound = 0.0;
    double variance_bound = 0.0;
    bool mean_exceeds = false;
    bool variance_exceeds = false;
    std::vector<RoundFit> round_fits;
    std::vector<SprinkleTrace> traces;
};

inline double quantile_sorted(const std::vector<double>& sorted, double q) {
    if (sorted.empty()) return NAN;
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto i = static_cast<std::size_t>(std::floor(pos));
    if (i + 1 >= sorted.size()) return sorted.back();
    return sorted[i] + (pos - static_cast<double>(i)) * (sorted[i + 1] - sorted[i]);
}

inline YStatistics summarize_traces(std::vector<SprinkleTrace> traces, SprinkleTrace::Kind kind, int twice_eta) {
    YStatistics s;
    s.kind = kind;
    s.runs = static_cast<int>(traces.size());
    const double eta = twice_eta / 2.0;
    const double max_rounds = kind == SprinkleTrace::Kind::cycle ? 2.0 * eta : eta;
    s.mean_bound = 8.0 * max_rounds;
    s.variance_bound = 56.0 * max_rounds;

    std::vector<double> ys;
    for (const auto& t : traces) {
        if (t.success()) ++s.successes;
        ys.push_back(static_cast<double>(t.total_samples));
        s.max_rounds = std::max(s.max_rounds, static_cast<int>(t.rounds.size()));
        s.mean_rounds += static_cast<double>(t.rounds.size());
        s.bound_violations += t.bound_violations;
        for (std::size_t i = 0; i < t.rounds.size(); ++i) {
            if (s.round_fits.size() <= i) s.round_fits.push_back(RoundFit{static_cast<int>(i) + 1});
            auto& fit = s.round_fits[i];
            const auto& r = t.rounds[i];
            ++fit.runs;
            fit.mean_samples += static_cast<double>(r.samples);
            if (r.boost_size > 0)
                fit.mean_expected += static_cast<double>(pair_count(static_cast<std::uint64_t>(t.n))) /
                                     static_cast<double>(r.boost_size);
        }
    }
    for (auto& fit : s.round_fits) {
        fit.mean_samples /= fit.runs;
        fit.mean_expected /= fit.runs;
    }
    if (s.runs == 0) return s;
    const double n = s.runs;
    s.mean_rounds /= n;
    for (double y : ys) s.mean += y;
    s.mean /= n;
    double m2 = 0.0;
    double m4 = 0.0;
    for (double y : ys) {
        const double dev = y - s.mean;
        m2 += dev * dev;
        m4 += dev * dev * dev * dev;
    }
    if (s.runs > 1) {
        s.variance = m2 / (n - 1.0);
        s.se_mean = std::sqrt(s.variance / n);
        const double central2 = m2 / n;
        s.se_variance = std::sqrt(std::max(0.0, m4 / n - central2 * central2) / n);
    }
    std::sort(ys.begin(), ys.end());
    for (double q : {0.0, 0.25, 0.5, 0.75, 0.9, 1.0}) s.quantiles.emplace_back(q, quantile_sorted(ys, q));
    s.mean_exceeds = s.mean - 3.0 * s.se_mean > s.mean_bound;
    s.variance_exceeds = s.variance - 3.0 * s.se_variance > s.variance_bound;
    s.traces = std::move(traces);
    return s;
}

// Runs `trials` sprinkle processes on h, trial t seeded by master.child(t).
inline YStatistics y_statistics(const Graph& h, const SprinkleConfig& cfg, SprinkleTrace::Kind kind, int trials,
                                std::uint64_t master_seed, int threads = 1) {
    if (trials < 1) throw std::invalid_argument("y_statistics: trials must be positive");
    const RandomSource master(master_seed);
    auto traces = run_indexed(trials, threads, [&](int t) {
        RandomSource rng = master.child(static_cast<std::uint64_t>(t));
        return kind == SprinkleTrace::Kind::cycle ? sprinkle_hamiltonian(h, cfg, rng) : sprinkle_pm(h, cfg, rng);
    });
    return summarize_traces(std::move(traces), kind, std::max(1, twice_eta(h)));
}

}  // namespace perturb
