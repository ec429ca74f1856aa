#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <set>

#include "brute_force.hpp"
#include "perturb/models.hpp"
#include "perturb/random.hpp"

using namespace perturb;

namespace {

std::vector<Edge> sorted_edges(std::vector<Edge> edges) {
    std::sort(edges.begin(), edges.end());
    return edges;
}

// Pearson chi-square goodness of fit against the uniform law on `cells`
// outcomes, at the 0.1% level (critical values for 5 and 14 degrees of freedom).
void expect_uniform(const std::map<std::vector<Edge>, int>& counts, std::size_t cells, int draws) {
    ASSERT_EQ(counts.size(), cells);
    const double expected = static_cast<double>(draws) / static_cast<double>(cells);
    double chi2 = 0.0;
    for (const auto& [key, count] : counts) chi2 += (count - expected) * (count - expected) / expected;
    const double critical = cells == 6 ? 20.515 : cells == 15 ? 36.123 : 0.0;
    ASSERT_GT(critical, 0.0) << "no critical value for " << cells << " cells";
    EXPECT_LT(chi2, critical);
}

}  // namespace

TEST(RandomSource, SameSeedSameStream) {
    RandomSource a(42);
    RandomSource b(42);
    for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next(), b.next());
    RandomSource c(43);
    EXPECT_NE(RandomSource(42).next(), c.next());
}

TEST(RandomSource, ChildrenDifferAndAreStable) {
    const RandomSource master(9);
    std::set<std::uint64_t> firsts;
    for (std::uint64_t t = 0; t < 1000; ++t) firsts.insert(master.child(t).next());
    EXPECT_EQ(firsts.size(), 1000U);
    EXPECT_EQ(master.child(7).next(), RandomSource(9).child(7).next());
}

TEST(RandomSource, BelowIsUniform) {
    RandomSource rng(1);
    std::vector<int> counts(7, 0);
    const int draws = 70000;
    for (int i = 0; i < draws; ++i) ++counts[rng.below(7)];
    const double sigma = std::sqrt(draws * (1.0 / 7) * (6.0 / 7));
    for (int c : counts) EXPECT_NEAR(c, draws / 7.0, 4.0 * sigma);
}

TEST(CompleteBipartite, Examples) {
    const Graph k46 = complete_bipartite(4, 10);
    EXPECT_EQ(k46.edge_count(), 24U);
    EXPECT_EQ(min_degree(k46), 4);
    EXPECT_TRUE(k46.has_edge(0, 4));
    EXPECT_FALSE(k46.has_edge(0, 1));
    EXPECT_FALSE(k46.has_edge(4, 5));

    const Graph big = complete_bipartite(950, 2000);
    EXPECT_EQ(twice_eta(big), 100);

    const Graph single = complete_bipartite(1, 2);
    EXPECT_EQ(single.edge_count(), 1U);

    EXPECT_THROW(complete_bipartite(0, 5), std::invalid_argument);
    EXPECT_THROW(complete_bipartite(5, 5), std::invalid_argument);
}

TEST(TwoCliques, DisjointHalves) {
    const Graph g = two_cliques(200, 0);
    EXPECT_EQ(min_degree(g), 99);
    EXPECT_FALSE(is_connected(g));
    EXPECT_EQ(g.edge_count(), 2U * 4950U);
}

TEST(TwoCliques, SingleSharedVertexIsCut) {
    const Graph g = two_cliques(10, 1);
    EXPECT_TRUE(is_connected(g));
    EXPECT_FALSE(is_2_connected(g));
    EXPECT_FALSE(brute::connected_without(g, 5));
    for (Vertex v = 0; v < 10; ++v)
        if (v != 5) {
            EXPECT_TRUE(brute::connected_without(g, v));
        }
}

TEST(TwoCliques, OverlapTwoIsTwoConnected) {
    const Graph g = two_cliques(20, 2);
    EXPECT_TRUE(is_2_connected(g));
    EXPECT_TRUE(brute::two_connected(g));
    EXPECT_EQ(min_degree(g), 10);
}

TEST(TwoCliques, RejectsBadParameters) {
    EXPECT_THROW(two_cliques(9, 0), std::invalid_argument);
    EXPECT_THROW(two_cliques(10, 6), std::invalid_argument);
    EXPECT_THROW(two_cliques(10, -1), std::invalid_argument);
}

TEST(Gnp, Extremes) {
    RandomSource rng(1);
    EXPECT_EQ(gnp(10, 0.0, rng).edge_count(), 0U);
    EXPECT_EQ(gnp(10, 1.0, rng), brute::complete_graph(10));
    EXPECT_THROW(gnp(10, 1.5, rng), std::invalid_argument);
}

TEST(Gnp, EdgeCountIsBinomial) {
    RandomSource rng(77);
    const int n = 2000;
    const double p = 2e-4;
    const double pairs = n * (n - 1) / 2.0;
    const int draws = 1000;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int i = 0; i < draws; ++i) {
        const double e = static_cast<double>(gnp(n, p, rng).edge_count());
        sum += e;
        sum_sq += e * e;
    }
    const double mean = sum / draws;
    const double var = sum_sq / draws - mean * mean;
    const double expected_var = pairs * p * (1 - p);
    EXPECT_NEAR(mean, pairs * p, 4.0 * std::sqrt(expected_var / draws));
    // Sample variance of a near-Poisson count has relative s.d. about sqrt(2/draws).
    EXPECT_NEAR(var / expected_var, 1.0, 4.0 * std::sqrt(2.0 / draws));
}

TEST(Gnp, BipartiteSideCountMatchesExpectation) {
    RandomSource rng(5);
    const int n = 400;
    const int d = 190;
    const double p = 0.01;
    const double b_pairs = (n - d) * (n - d - 1) / 2.0;
    const int draws = 400;
    double sum = 0.0;
    for (int i = 0; i < draws; ++i) {
        const Graph g = gnp(n, p, rng);
        for (const Edge& e : g.edges())
            if (e.u >= d) sum += 1.0;
    }
    EXPECT_NEAR(sum / draws, b_pairs * p, 4.0 * std::sqrt(b_pairs * p / draws));
}

TEST(Gnm, Extremes) {
    RandomSource rng(2);
    EXPECT_EQ(gnm(5, 0, rng).edge_count(), 0U);
    EXPECT_EQ(gnm(5, 10, rng), brute::complete_graph(5));
    EXPECT_THROW(gnm(5, 11, rng), std::invalid_argument);
}

TEST(Gnm, UniformOverTwoEdgeGraphs) {
    RandomSource rng(3);
    std::map<std::vector<Edge>, int> counts;
    const int draws = 15000;
    for (int i = 0; i < draws; ++i) ++counts[gnm(4, 2, rng).edges()];
    expect_uniform(counts, 15, draws);
}

TEST(Gnm, DenseBranchIsUniformToo) {
    RandomSource rng(4);
    std::map<std::vector<Edge>, int> counts;
    const int draws = 15000;
    for (int i = 0; i < draws; ++i) ++counts[gnm(4, 4, rng).edges()];
    expect_uniform(counts, 15, draws);
}

TEST(Gnm, SmallerDrawIsPrefixUnderSameSeed) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        RandomSource a(seed);
        RandomSource b(seed);
        const auto small = sample_uniform_edges(300, 50, a);
        const auto large = sample_uniform_edges(300, 400, b);
        ASSERT_TRUE(std::equal(small.begin(), small.end(), large.begin()));
        EXPECT_EQ(std::set<Edge>(large.begin(), large.end()).size(), 400U);
    }
}

TEST(Gnm, DeterministicForSeed) {
    RandomSource a(99);
    RandomSource b(99);
    EXPECT_EQ(gnm(500, 3000, a), gnm(500, 3000, b));
    RandomSource c(99);
    RandomSource d(99);
    EXPECT_EQ(gnp(500, 0.02, c), gnp(500, 0.02, d));
}

TEST(EdgeIndex, Bijection) {
    for (int n : {2, 3, 7, 50}) {
        const std::uint64_t total = pair_count(static_cast<std::uint64_t>(n));
        std::uint64_t k = 0;
        for (Vertex u = 0; u < n; ++u)
            for (Vertex v = u + 1; v < n; ++v, ++k) {
                ASSERT_EQ(edge_from_index(n, k), Edge(u, v));
                ASSERT_EQ(index_of_edge(n, Edge(u, v)), k);
            }
        EXPECT_EQ(k, total);
    }
    const int big = 100000;
    const std::uint64_t last = pair_count(big) - 1;
    EXPECT_EQ(edge_from_index(big, last), Edge(big - 2, big - 1));
    EXPECT_EQ(edge_from_index(big, 0), Edge(0, 1));
    EXPECT_EQ(index_of_edge(big, edge_from_index(big, 123456789)), 123456789U);
}

TEST(EdgeStream, TwoVerticesAlwaysSamePair) {
    RandomSource rng(1);
    EdgeStream stream(2, rng);
    for (int i = 0; i < 100; ++i) EXPECT_EQ(stream.next(), Edge(0, 1));
    EXPECT_THROW(EdgeStream(1, rng), std::invalid_argument);
}

TEST(EdgeStream, UniformOverPairs) {
    RandomSource rng(8);
    EdgeStream stream(4, rng);
    std::map<std::vector<Edge>, int> counts;
    const int draws = 60000;
    for (int i = 0; i < draws; ++i) ++counts[{stream.next()}];
    expect_uniform(counts, 6, draws);
}

TEST(EdgeStream, DrawsWithReplacement) {
    RandomSource rng(12);
    EdgeStream stream(3, rng);
    const int draws = 30000;
    int repeats = 0;
    Edge prev = stream.next();
    for (int i = 0; i < draws; ++i) {
        const Edge e = stream.next();
        if (e == prev) ++repeats;
        prev = e;
    }
    const double p = 1.0 / 3.0;
    EXPECT_NEAR(repeats, draws * p, 3.0 * std::sqrt(draws * p * (1 - p)));
}

TEST(Coupling, MostlyCoupledWhenMeanExceedsM) {
    RandomSource rng(21);
    int coupled = 0;
    for (int i = 0; i < 1000; ++i) {
        const auto c = couple_gnm_gnp(100, 50, 0.5, rng);
        EXPECT_EQ(c.uniform.edge_count(), 50U);
        if (c.coupled) {
            ++coupled;
            for (const Edge& e : c.uniform.edges()) ASSERT_TRUE(c.binomial.has_edge(e.u, e.v));
        }
    }
    EXPECT_GE(coupled, 990);
}

TEST(Coupling, UniformMarginal) {
    RandomSource rng(22);
    std::map<std::vector<Edge>, int> counts;
    const int draws = 15000;
    for (int i = 0; i < draws; ++i) ++counts[couple_gnm_gnp(4, 2, 0.5, rng).uniform.edges()];
    expect_uniform(counts, 15, draws);
}

TEST(Coupling, RejectsBadArguments) {
    RandomSource rng(1);
    EXPECT_THROW(couple_gnm_gnp(10, 0, 0.1, rng), std::invalid_argument);
    EXPECT_THROW(couple_gnm_gnp(10, 46, 0.1, rng), std::invalid_argument);
    EXPECT_THROW(couple_gnm_gnp(10, 5, 0.0, rng), std::invalid_argument);
}

TEST(Perturbation, ModelsProduceDistinctEdges) {
    RandomSource rng(30);
    for (const auto& spec : {PerturbationSpec::binomial(0.1), PerturbationSpec::uniform(40), PerturbationSpec::stream(40)}) {
        const auto edges = sample_perturbation(30, spec, rng);
        EXPECT_EQ(std::set<Edge>(edges.begin(), edges.end()).size(), edges.size()) << to_string(spec.model);
    }
    EXPECT_EQ(sample_perturbation(30, PerturbationSpec::uniform(40), rng).size(), 40U);
    EXPECT_LE(sample_perturbation(30, PerturbationSpec::stream(40), rng).size(), 40U);
    EXPECT_THROW(PerturbationSpec::binomial(-0.1).validate(10), std::invalid_argument);
    EXPECT_THROW(PerturbationSpec::uniform(46).validate(10), std::invalid_argument);
    EXPECT_DOUBLE_EQ(PerturbationSpec::uniform(9).density(10), 0.2);
    EXPECT_EQ(sorted_edges(sample_perturbation(5, PerturbationSpec::uniform(10), rng)), brute::complete_graph(5).edges());
}
