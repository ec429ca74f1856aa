#include <gtest/gtest.h>

#include <cmath>

#include "brute_force.hpp"
#include "perturb/conjecture.hpp"
#include "perturb/experiments.hpp"
#include "perturb/matching.hpp"
#include "perturb/models.hpp"

using namespace perturb;

TEST(Wilson, KnownValues) {
    const auto zero = wilson_interval(0, 10);
    EXPECT_DOUBLE_EQ(zero.lo, 0.0);
    EXPECT_NEAR(zero.hi, 0.27753, 5e-6);
    const auto half = wilson_interval(5, 10);
    EXPECT_NEAR(half.lo, 0.23659, 5e-6);
    EXPECT_NEAR(half.hi, 0.76341, 5e-6);
    const auto all = wilson_interval(10, 10);
    EXPECT_NEAR(all.lo, 1.0 - 0.27753, 5e-6);
    EXPECT_DOUBLE_EQ(all.hi, 1.0);
    const auto none = wilson_interval(0, 0);
    EXPECT_DOUBLE_EQ(none.lo, 0.0);
    EXPECT_DOUBLE_EQ(none.hi, 1.0);
}

TEST(HostSpec, Parameters) {
    const auto b = HostSpec::bipartite_eta(2000, 100);
    EXPECT_EQ(b.d(), 950);
    EXPECT_DOUBLE_EQ(b.eta(), 50.0);
    EXPECT_EQ(twice_eta(b.build()), 100);
    const auto c = HostSpec::two_cliques(200, 0);
    EXPECT_EQ(c.d(), min_degree(c.build()));
    const auto k = HostSpec::custom(brute::complete_graph(6));
    EXPECT_EQ(k.d(), 5);
    EXPECT_EQ(to_string(HostFamily::two_cliques), "two-cliques");
    EXPECT_EQ(parse_property("2conn"), Property::two_connected);
    EXPECT_EQ(parse_property(to_string(Property::linear_forest)), Property::linear_forest);
    EXPECT_THROW(parse_property("hamilton"), std::invalid_argument);
}

TEST(EstimateProbability, NoEdgesNeverHelpsExtremalHost) {
    const auto r = estimate_probability(HostSpec::bipartite(100, 45), PerturbationSpec::uniform(0), Property::ham, 20, 1);
    EXPECT_EQ(r.successes, 0U);
    EXPECT_EQ(r.trials, 20U);
    EXPECT_DOUBLE_EQ(r.freq(), 0.0);
    EXPECT_EQ(r.family, "bipartite");
    EXPECT_EQ(r.d, 45);
}

TEST(EstimateProbability, CompleteHostAlwaysSucceeds) {
    const auto host = HostSpec::custom(brute::complete_graph(8));
    for (Property prop : {Property::ham, Property::pm, Property::two_connected}) {
        const auto r = estimate_probability(host, PerturbationSpec::uniform(0), prop, 5, 2);
        EXPECT_EQ(r.successes, 5U) << to_string(prop);
    }
}

TEST(EstimateProbability, ManyEdgesMakeExtremalHostHamiltonian) {
    const auto r = estimate_probability(HostSpec::bipartite_eta(2000, 100), PerturbationSpec::uniform(600), Property::ham,
                                        100, 3);
    EXPECT_GE(r.freq(), 0.9);
}

TEST(EstimateProbability, ExtremalShortcutMatchesExactOracleOnSmallHosts) {
    // A custom host forces the exact oracles; the bipartite family uses the predicates.
    for (const auto& [n, d] : {std::pair{12, 5}, std::pair{14, 6}}) {
        for (std::uint64_t m : {1U, 3U, 6U}) {
            for (Property prop : {Property::ham, Property::pm}) {
                const auto fast = estimate_probability(HostSpec::bipartite(n, d), PerturbationSpec::uniform(m), prop, 60, 9,
                                                       ExperimentOptions{1, true});
                const auto slow = estimate_probability(HostSpec::custom(complete_bipartite(d, n)),
                                                       PerturbationSpec::uniform(m), prop, 60, 9, ExperimentOptions{1, true});
                ASSERT_EQ(fast.records.size(), slow.records.size());
                for (std::size_t i = 0; i < fast.records.size(); ++i)
                    EXPECT_EQ(fast.records[i].verdict, slow.records[i].verdict);
            }
        }
    }
}

TEST(EstimateProbability, ThreadCountDoesNotChangeVerdicts) {
    const auto host = HostSpec::bipartite_eta(400, 20);
    const auto one = estimate_probability(host, PerturbationSpec::uniform(80), Property::ham, 64, 4, {1, true});
    const auto three = estimate_probability(host, PerturbationSpec::uniform(80), Property::ham, 64, 4, {3, true});
    EXPECT_EQ(one.successes, three.successes);
    for (std::size_t i = 0; i < one.records.size(); ++i) {
        EXPECT_EQ(one.records[i].verdict, three.records[i].verdict);
        EXPECT_EQ(one.records[i].seed, three.records[i].seed);
    }
}

TEST(EstimateProbability, BinomialAndStreamModels) {
    const auto host = HostSpec::bipartite_eta(400, 20);
    const auto bin = estimate_probability(host, PerturbationSpec::binomial(0.01), Property::pm, 30, 5);
    EXPECT_EQ(bin.successes, 30U);
    EXPECT_DOUBLE_EQ(bin.p, 0.01);
    const auto none = estimate_probability(host, PerturbationSpec::stream(0), Property::pm, 30, 5);
    EXPECT_EQ(none.successes, 0U);
    EXPECT_THROW(estimate_probability(host, PerturbationSpec::uniform(0), Property::pm, 0, 5), std::invalid_argument);
}

TEST(TwoConnectivity, DisjointCliques) {
    const Graph h = two_cliques(200, 0);
    EXPECT_EQ(two_connectivity_experiment(h, 0, 50, 6).successes, 0U);
    EXPECT_GE(two_connectivity_experiment(h, 20, 200, 6).freq(), 0.9);
    EXPECT_EQ(two_connectivity_experiment(h, 1, 50, 6).successes, 0U);
    EXPECT_EQ(two_connectivity_experiment(brute::cycle_graph(10), 0, 10, 6).successes, 10U);
}

TEST(LocateThreshold, ProbesAreMonotoneAndBracketHolds) {
    const auto host = HostSpec::bipartite_eta(400, 20);
    const auto est = locate_threshold(host, Property::pm, 100, 7);
    ASSERT_GE(est.probes.size(), 3U);
    for (std::size_t i = 1; i < est.probes.size(); ++i) {
        EXPECT_LT(est.probes[i - 1].m, est.probes[i].m);
        EXPECT_LE(est.probes[i - 1].successes, est.probes[i].successes);
    }
    EXPECT_LE(est.bracket_lo, est.bracket_hi);
    EXPECT_LE(static_cast<double>(est.bracket_hi - est.bracket_lo), std::max(2.0, 0.02 * est.m_star));
    EXPECT_DOUBLE_EQ(est.predicted_m, 40.0);
    EXPECT_NEAR(est.p_star, est.m_star / (400.0 * 399.0 / 2.0), 1e-15);
    EXPECT_FALSE(est.unreliable);
}

TEST(LocateThreshold, RejectsBadBrackets) {
    const auto host = HostSpec::bipartite_eta(400, 20);
    ThresholdOptions topts;
    topts.hi = 3;
    EXPECT_THROW(locate_threshold(host, Property::ham, 20, 1, topts), std::runtime_error);
    topts.hi = 0;
    EXPECT_THROW(locate_threshold(host, Property::ham, 20, 1, topts), std::invalid_argument);
    EXPECT_THROW(locate_threshold(HostSpec::two_cliques(20, 0), Property::two_connected, 20, 1), std::invalid_argument);
}

TEST(LocateThreshold, PredictionsInBothUnits) {
    const auto host = HostSpec::bipartite_eta(2000, 100);
    const auto ham = predicted_threshold(host, Property::ham);
    const auto pm = predicted_threshold(host, Property::pm);
    EXPECT_DOUBLE_EQ(ham.first, 400.0);
    EXPECT_DOUBLE_EQ(pm.first, 200.0);
    EXPECT_DOUBLE_EQ(ham.second, 16.0 * 50.0 / 4e6);
    const auto lf = predicted_threshold(host, Property::linear_forest);
    EXPECT_DOUBLE_EQ(lf.second, ham.second);
    EXPECT_DOUBLE_EQ(lf.first, ham.second * 1050.0 * 1049.0 / 2.0);
}

TEST(LinearForestScan, SubcriticalRegimeNeedsNoAborts) {
    const auto scan = linear_forest_threshold_scan(0.475, 400, 100, 8);
    EXPECT_EQ(scan.forest.host.d(), 190);
    EXPECT_EQ(scan.forest.aborted, 0U);
    EXPECT_FALSE(scan.forest.unreliable);
    ASSERT_TRUE(scan.pm.has_value());
    EXPECT_GT(scan.gap(), 1.0);
    for (const auto& probe : scan.forest.probes) {
        EXPECT_EQ(probe.n, 400);
        EXPECT_EQ(probe.property, Property::linear_forest);
    }
    EXPECT_THROW(linear_forest_threshold_scan(0.5, 100, 10, 1), std::invalid_argument);
}

TEST(LinearForestScan, NearHalfMatchesHamiltonicityPrediction) {
    const auto scan = linear_forest_threshold_scan(0.475, 2000, 200, 9, {}, false);
    EXPECT_FALSE(scan.forest.unreliable);
    EXPECT_GE(scan.forest.p_star, 0.85 * scan.forest.predicted_p);
    EXPECT_LE(scan.forest.p_star, 1.15 * scan.forest.predicted_p);
}

TEST(LinearForestScan, SupercriticalAbortsAreCountedAndFlagged) {
    const auto scan = linear_forest_threshold_scan(0.3, 100, 60, 8, {}, false);
    EXPECT_GT(scan.forest.attempted, 0U);
    EXPECT_EQ(scan.forest.unreliable, 20 * scan.forest.aborted > scan.forest.attempted);
    std::uint64_t aborted = 0;
    for (const auto& probe : scan.forest.probes) aborted += probe.aborted;
    EXPECT_EQ(aborted, scan.forest.aborted);
}

TEST(LinearForestOracle, AgreesWithHamiltonicityOfTheHost) {
    // With r confined to B, a long enough linear forest in B is exactly Hamiltonicity.
    RandomSource rng(21);
    for (int rep = 0; rep < 200; ++rep) {
        const int n = 10 + rep % 5;
        const int d = n / 2 - 1 - rep % 2;
        const auto inside = sample_uniform_edges(n - d, rng.below(static_cast<std::uint64_t>(n)), rng);
        Graph g = complete_bipartite(d, n);
        for (const Edge& e : inside) g.add_edge(e.u + d, e.v + d);
        const bool forest = static_cast<int>(max_linear_forest(Graph(n - d, inside)).size()) >= n - 2 * d;
        EXPECT_EQ(forest, hamiltonian_exact(g).has_value());
    }
}

TEST(Quantiles, LinearInterpolation) {
    const std::vector<double> v{1, 2, 3, 4};
    EXPECT_DOUBLE_EQ(quantile_sorted(v, 0.0), 1.0);
    EXPECT_DOUBLE_EQ(quantile_sorted(v, 0.5), 2.5);
    EXPECT_DOUBLE_EQ(quantile_sorted(v, 1.0), 4.0);
    EXPECT_DOUBLE_EQ(quantile_sorted(v, 0.9), 3.7);
    EXPECT_TRUE(std::isnan(quantile_sorted({}, 0.5)));
}

TEST(YStatistics, SummaryOfKnownTraces) {
    std::vector<SprinkleTrace> traces(4);
    for (int i = 0; i < 4; ++i) {
        traces[i].n = 64;
        traces[i].total_samples = static_cast<std::uint64_t>(i + 1);
        traces[i].outcome = SprinkleOutcome::success;
        traces[i].rounds.push_back(SprinkleRound{62, 2016, static_cast<std::uint64_t>(i + 1), Edge(0, 1)});
    }
    const auto s = summarize_traces(traces, SprinkleTrace::Kind::cycle, 2);
    EXPECT_EQ(s.successes, 4);
    EXPECT_DOUBLE_EQ(s.mean, 2.5);
    EXPECT_NEAR(s.variance, 5.0 / 3.0, 1e-12);
    EXPECT_DOUBLE_EQ(s.mean_bound, 16.0);
    EXPECT_DOUBLE_EQ(s.variance_bound, 112.0);
    ASSERT_EQ(s.round_fits.size(), 1U);
    EXPECT_DOUBLE_EQ(s.round_fits[0].mean_expected, 1.0);
    EXPECT_DOUBLE_EQ(s.round_fits[0].mean_samples, 2.5);
    EXPECT_FALSE(s.mean_exceeds);
    const auto pm = summarize_traces(traces, SprinkleTrace::Kind::matching, 2);
    EXPECT_DOUBLE_EQ(pm.mean_bound, 8.0);
}

TEST(YStatistics, HamiltonianHostGivesZero) {
    const auto s = y_statistics(brute::complete_graph(32), SprinkleConfig{}, SprinkleTrace::Kind::cycle, 10, 1);
    EXPECT_EQ(s.successes, 10);
    EXPECT_DOUBLE_EQ(s.mean, 0.0);
    EXPECT_DOUBLE_EQ(s.variance, 0.0);
    for (const auto& [q, value] : s.quantiles) EXPECT_DOUBLE_EQ(value, 0.0);
}

TEST(YStatistics, ThreadsDoNotChangeTraces) {
    const Graph h = complete_bipartite(124, 256);
    const auto a = y_statistics(h, SprinkleConfig{}, SprinkleTrace::Kind::cycle, 12, 5, 1);
    const auto b = y_statistics(h, SprinkleConfig{}, SprinkleTrace::Kind::cycle, 12, 5, 3);
    ASSERT_EQ(a.traces.size(), b.traces.size());
    for (std::size_t i = 0; i < a.traces.size(); ++i) EXPECT_EQ(a.traces[i].total_samples, b.traces[i].total_samples);
    EXPECT_DOUBLE_EQ(a.mean, b.mean);
    EXPECT_EQ(a.successes, 12);
}

TEST(KarpSipser, BelowEIsLambertW) {
    const auto r = karp_sipser_roots(1.0);
    EXPECT_NEAR(r.gamma_lo, 0.5671432904097838, 1e-12);
    EXPECT_NEAR(r.gamma_hi, r.gamma_lo, 1e-12);
    EXPECT_DOUBLE_EQ(karp_sipser_matching_ratio(0.0), 0.0);
    EXPECT_THROW(karp_sipser_roots(-1.0), std::invalid_argument);
}

TEST(KarpSipser, SlowConvergenceNearE) {
    const auto r = karp_sipser_roots(std::exp(1.0), 1000);
    EXPECT_TRUE(r.grid_certified);
    EXPECT_LE(r.residual, 1e-12);
    EXPECT_NEAR(r.gamma_lo, 1.0, 1e-3);
}

TEST(KarpSipser, RatioMatchesSimulatedMatchings) {
    RandomSource rng(31);
    const int big = 4000;
    for (double a : {0.5, 1.0, 2.0, 4.0}) {
        double sum = 0.0;
        const int reps = 5;
        for (int i = 0; i < reps; ++i)
            sum += static_cast<double>(max_matching(gnp(big, a / big, rng)).size()) / big;
        EXPECT_NEAR(sum / reps, karp_sipser_matching_ratio(a), 0.01) << "a = " << a;
    }
}

TEST(Conjecture, SolutionsSatisfyBothEquations) {
    double previous = INFINITY;
    for (double alpha : {0.1, 0.2, 0.3, 0.4, 0.49}) {
        const auto q = conjecture_pm_constant(alpha);
        const double a = (1.0 - alpha) * q.C;
        EXPECT_LE(std::fabs(q.gamma_lo - a * std::exp(-a * std::exp(-q.gamma_lo))), 1e-10);
        EXPECT_NEAR(q.gamma_hi, a * std::exp(-q.gamma_lo), 1e-12);
        const double ratio = 1.0 - (q.gamma_lo + q.gamma_hi + q.gamma_lo * q.gamma_hi) / (2.0 * a);
        EXPECT_NEAR(ratio, (1.0 - 2.0 * alpha) / (2.0 - 2.0 * alpha), 1e-10);
        EXPECT_LT(q.C, previous);
        previous = q.C;
    }
    const double c49 = conjecture_pm_constant(0.49).C;
    EXPECT_GE(c49 / 0.08, 0.5);
    EXPECT_LE(c49 / 0.08, 2.0);
    EXPECT_THROW(conjecture_pm_constant(0.5), std::invalid_argument);
    EXPECT_THROW(conjecture_pm_constant(0.3, -1.0), std::invalid_argument);
}
