#include "oracles.hpp"

#include "rainbow/arrows.hpp"
#include "rainbow/enumerate.hpp"
#include "rainbow/families.hpp"
#include "rainbow/graph6.hpp"
#include "rainbow/oracle.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace rainbow;

namespace {

std::vector<Graph> small_patterns()
{
    return {path(2), path(3), path(4), clique(3), Graph::from_edges(3, {{1, 2}})};
}

Graph wheel_plus_isolated() // W_5 plus an isolated vertex
{
    Graph g(7);
    for (int i = 1; i <= 5; ++i) {
        g.add_edge(0, i);
        g.add_edge(i, i % 5 + 1);
    }
    return g;
}

void expect_sound(const Graph& g, const Graph& h, const ArrowCertificate& c)
{
    if (c.verdict != Verdict::not_arrows) {
        EXPECT_FALSE(c.bad_coloring);
        return;
    }
    ASSERT_TRUE(c.bad_coloring);
    EXPECT_TRUE(is_proper_coloring(g, *c.bad_coloring));
    EXPECT_FALSE(find_rainbow_copy(g, *c.bad_coloring, h)) << to_graph6(g);
}

// Random proper colouring that keeps `fixed` vertices' colours.
std::vector<int> random_completion(const Graph& g, std::vector<int> c, Bits fixed, std::mt19937& rng)
{
    int n = g.order();
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int v = 0; v < n; ++v) {
        if ((fixed >> v) & 1U)
            continue;
        c[static_cast<std::size_t>(v)] = -1;
    }
    for (int v = 0; v < n; ++v) {
        if (c[static_cast<std::size_t>(v)] >= 0)
            continue;
        for (;;) {
            int col = pick(rng) + n; // fresh range, plus occasional reuse below
            if (pick(rng) % 2)
                col = pick(rng);
            bool ok = true;
            for_each_bit(g.neighbors(v), [&](int u) { ok = ok && c[static_cast<std::size_t>(u)] != col; });
            if (ok) {
                c[static_cast<std::size_t>(v)] = col;
                break;
            }
        }
    }
    return c;
}

} // namespace

TEST(FindRainbowCopy, Examples)
{
    auto image = find_rainbow_copy(clique(3), std::vector<int>{0, 1, 2}, clique(3));
    ASSERT_TRUE(image);
    EXPECT_EQ(image->size(), 3u);
    EXPECT_FALSE(find_rainbow_copy(path(3), std::vector<int>{0, 1, 0}, path(3)));
    EXPECT_THROW(find_rainbow_copy(path(3), std::vector<int>{0, 0, 1}, path(3)), ArrowError);
    EXPECT_THROW(find_rainbow_copy(path(3), std::vector<int>{0, 1}, path(3)), ArrowError);
    // must_include restricts the embeddings considered
    Graph two = disjoint_union({path(3), path(2)});
    std::vector<int> col{0, 1, 2, 0, 1};
    EXPECT_TRUE(find_rainbow_copy(two, col, path(2), 3));
    EXPECT_FALSE(find_rainbow_copy(two, col, path(3), 3));
}

TEST(FindRainbowCopy, ReplicationGraphAlwaysHasOne)
{
    auto r = replication_graph(path(5), {1, 2, 2, 2, 3});
    std::mt19937 rng(101);
    for (int t = 0; t < 200; ++t) {
        auto c = random_completion(r.expanded, std::vector<int>(10, -1), 0, rng);
        auto image = find_rainbow_copy(r.expanded, c, path(5));
        ASSERT_TRUE(image);
        EXPECT_EQ(r.expanded.induced(*image), path(5));
    }
}

TEST(Arrows, Examples)
{
    for (int n = 1; n <= 7; ++n)
        EXPECT_EQ(arrows(clique(n), clique(n)).verdict, Verdict::arrows);
    EXPECT_EQ(arrows(disjoint_cliques({2, 4}), disjoint_cliques({2, 2})).verdict, Verdict::arrows);
    EXPECT_EQ(arrows(disjoint_cliques({2, 3}), disjoint_cliques({2, 2})).verdict, Verdict::not_arrows);
    EXPECT_EQ(arrows(wheel_plus_isolated(), Graph::from_edges(4, {{1, 2}, {2, 3}})).verdict, Verdict::arrows);
    auto p4 = arrows(path(4), path(4));
    EXPECT_EQ(p4.verdict, Verdict::not_arrows);
    expect_sound(path(4), path(4), p4);
}

TEST(Arrows, EverySixVertexGraphFailsP4)
{
    for (const auto& g : enumerate_graphs(6)) {
        auto c = arrows(g, path(4));
        ASSERT_EQ(c.verdict, Verdict::not_arrows) << to_graph6(g);
        expect_sound(g, path(4), c);
    }
}

TEST(Arrows, Errors)
{
    EXPECT_THROW(arrows(path(3), path(4)), ArrowError);
    ArrowOptions bad;
    bad.vertex_order = {0, 0, 1};
    EXPECT_THROW(arrows(path(3), path(2), bad), ArrowError);
    bad.vertex_order = {0, 1};
    EXPECT_THROW(arrows(path(3), path(2), bad), ArrowError);
    EXPECT_THROW(oracle_arrows(path(9), path(2)), std::invalid_argument);
    EXPECT_THROW(oracle_arrows(replication_graph(path(3), {3, 3, 3})), std::invalid_argument);
}

TEST(Arrows, BudgetGivesUnknown)
{
    ArrowOptions opt;
    opt.node_budget = 50;
    auto c = arrows_replication(replication_graph(path(6), {2, 2, 3, 3, 2, 2}), opt);
    EXPECT_EQ(c.verdict, Verdict::unknown);
    EXPECT_TRUE(c.stats.budget_exhausted);
    EXPECT_FALSE(c.bad_coloring);
    opt.threads = 4;
    EXPECT_EQ(arrows_replication(replication_graph(path(6), {2, 2, 3, 3, 2, 2}), opt).verdict, Verdict::unknown);
}

TEST(Oracle, Examples)
{
    EXPECT_TRUE(oracle_arrows(clique(3), clique(3)));
    EXPECT_FALSE(oracle_arrows(path(4), path(4)));
    EXPECT_TRUE(oracle_arrows(theorem1_construction(path(3)).expanded, path(3)));
}

// Exhaustive over isomorphism classes of order <= 6.
TEST(Arrows, AgreesWithOracle)
{
    for (int n = 1; n <= 6; ++n)
        for (const auto& g : enumerate_graphs(n))
            for (const auto& h : small_patterns()) {
                if (h.order() > n)
                    continue;
                auto c = arrows(g, h);
                ASSERT_EQ(c.verdict == Verdict::arrows, oracle_arrows(g, h)) << to_graph6(g) << " " << to_graph6(h);
                expect_sound(g, h, c);
            }
}

TEST(ArrowsReplication, Examples)
{
    EXPECT_EQ(arrows_replication(replication_graph(path(6), {2, 2, 3, 3, 2, 2})).verdict, Verdict::arrows);
    EXPECT_EQ(arrows_replication(replication_graph(clique(3), {1, 1, 1})).verdict, Verdict::arrows);
    EXPECT_EQ(arrows_replication(replication_graph(path(5), {1, 2, 2, 2, 3})).verdict, Verdict::arrows);
    EXPECT_EQ(arrows_replication(replication_graph(path(5), {3, 1, 1, 2, 3})).verdict, Verdict::arrows);
    Graph h = Graph::from_edges(4, {{1, 2}, {2, 3}});
    for (int total = 4; total <= 7; ++total)
        for (int a = 1; a <= total - 3; ++a)
            for (int b = 1; a + b <= total - 2; ++b)
                for (int c = 1; a + b + c <= total - 1; ++c) {
                    auto r = replication_graph(h, {a, b, c, total - a - b - c});
                    auto cert = arrows_replication(r);
                    EXPECT_EQ(cert.verdict, Verdict::not_arrows);
                    ASSERT_TRUE(cert.bad_coloring);
                    EXPECT_FALSE(find_rainbow_transversal(r, *cert.bad_coloring));
                }
}

TEST(ArrowsReplication, AgreesWithOracle)
{
    std::mt19937 rng(103);
    for (int t = 0; t < 150; ++t) {
        int k = 2 + t % 4;
        Graph h = oracle::random_graph(k, 0.5, rng);
        std::vector<int> sizes(static_cast<std::size_t>(k), 1);
        std::uniform_int_distribution<int> which(0, k - 1);
        int extra = std::uniform_int_distribution<int>(0, 8 - k)(rng);
        for (int e = 0; e < extra; ++e)
            ++sizes[static_cast<std::size_t>(which(rng))];
        auto r = replication_graph(h, sizes);
        EXPECT_EQ(arrows_replication(r).verdict == Verdict::arrows, oracle_arrows(r)) << to_graph6(h);
        if (t % 3 == 0) {
            for (std::size_t b = 0; b < sizes.size(); ++b)
                r.demand.push_back(1 + static_cast<int>(b) % sizes[b]);
            EXPECT_EQ(arrows_replication(r).verdict == Verdict::arrows, oracle_arrows(r)) << to_graph6(h);
        }
    }
}

TEST(ArrowsReplication, DemandErrors)
{
    auto r = replication_graph(path(3), {1, 2, 1});
    r.demand = {1, 3, 1};
    EXPECT_THROW(arrows_replication(r), ArrowError);
    r.demand = {1, 1};
    EXPECT_THROW(arrows_replication(r), ArrowError);
    r.demand = {0, 1, 1};
    EXPECT_THROW(arrows_replication(r), ArrowError);
}

TEST(ArrowsReplication, TransversalSoundness)
{
    std::mt19937 rng(107);
    for (int t = 0; t < 200; ++t) {
        Graph h = oracle::random_graph(2 + t % 5, 0.5, rng);
        std::vector<int> sizes;
        for (int i = 0; i < h.order(); ++i)
            sizes.push_back(1 + (t + i) % 3);
        auto r = replication_graph(h, sizes);
        auto c = random_completion(r.expanded, std::vector<int>(static_cast<std::size_t>(r.order()), -1), 0, rng);
        auto pick = find_rainbow_transversal(r, c);
        if (!pick)
            continue;
        ASSERT_EQ(pick->size(), static_cast<std::size_t>(h.order()));
        std::vector<int> colors;
        for (std::size_t b = 0; b < pick->size(); ++b) {
            EXPECT_EQ(r.clique_of[static_cast<std::size_t>((*pick)[b])], static_cast<int>(b));
            colors.push_back(c[static_cast<std::size_t>((*pick)[b])]);
        }
        std::sort(colors.begin(), colors.end());
        EXPECT_EQ(std::adjacent_find(colors.begin(), colors.end()), colors.end());
        EXPECT_EQ(r.expanded.induced(*pick), h);
    }
}

TEST(ArrowsCertificate, SoundOnRandomGraphs)
{
    std::mt19937 rng(109);
    for (int t = 0; t < 150; ++t) {
        Graph g = oracle::random_graph(4 + t % 6, 0.35, rng);
        for (const auto& h : small_patterns())
            expect_sound(g, h, arrows(g, h));
    }
}

// A rainbow copy on a coloured prefix survives any completion.
TEST(ArrowsCertificate, PrefixPruneSound)
{
    std::mt19937 rng(113);
    int checked = 0;
    for (int t = 0; t < 300; ++t) {
        Graph g = oracle::random_graph(5 + t % 3, 0.4, rng);
        int n = g.order();
        auto full = random_completion(g, std::vector<int>(static_cast<std::size_t>(n), -1), 0, rng);
        int k = 3 + t % (n - 2);
        Bits prefix = (Bits{1} << k) - 1;
        std::vector<int> sub(full.begin(), full.begin() + k);
        for (const auto& h : small_patterns()) {
            if (!find_rainbow_copy(g.induced(prefix), sub, h))
                continue;
            ++checked;
            for (int r = 0; r < 10; ++r)
                EXPECT_TRUE(find_rainbow_copy(g, random_completion(g, full, prefix, rng), h));
        }
    }
    EXPECT_GT(checked, 100);
}

TEST(ArrowsCertificate, IsolatedVertexMonotone)
{
    for (int n = 2; n <= 6; ++n)
        for (const auto& g : enumerate_graphs(n))
            for (const auto& h : small_patterns()) {
                if (h.order() > n || arrows(g, h).verdict != Verdict::arrows)
                    continue;
                EXPECT_EQ(arrows(g.with_vertex(0), h).verdict, Verdict::arrows) << to_graph6(g);
            }
}

// With the identity vertex order the reported colouring is the
// lexicographically first bad restricted-growth string.
TEST(ArrowsCertificate, LexLeastBadColoring)
{
    std::mt19937 rng(127);
    for (int t = 0; t < 120; ++t) {
        Graph g = oracle::random_graph(3 + t % 5, 0.45, rng);
        for (const auto& h : small_patterns()) {
            if (h.order() > g.order())
                continue;
            for (bool twins : {true, false}) {
                ArrowOptions opt;
                opt.vertex_order.resize(static_cast<std::size_t>(g.order()));
                std::iota(opt.vertex_order.begin(), opt.vertex_order.end(), 0);
                opt.twin_symmetry = twins;
                auto got = arrows(g, h, opt).bad_coloring;
                EXPECT_EQ(got, oracle::first_bad_coloring(g, h)) << to_graph6(g) << " " << to_graph6(h);
            }
        }
    }
}

TEST(ArrowsCertificate, DeterministicAcrossThreads)
{
    std::mt19937 rng(131);
    for (int t = 0; t < 40; ++t) {
        Graph g = oracle::random_graph(7 + t % 4, 0.4, rng);
        Graph h = small_patterns()[static_cast<std::size_t>(t) % 5];
        auto one = arrows(g, h);
        for (int threads : {2, 4, 8}) {
            ArrowOptions opt;
            opt.threads = threads;
            auto many = arrows(g, h, opt);
            EXPECT_EQ(many.verdict, one.verdict) << to_graph6(g);
            EXPECT_EQ(many.bad_coloring, one.bad_coloring) << to_graph6(g);
        }
        EXPECT_EQ(arrows(g, h).bad_coloring, one.bad_coloring);
    }
    ArrowOptions opt;
    opt.threads = 4;
    auto r = replication_graph(path(5), {1, 2, 2, 2, 2});
    EXPECT_EQ(arrows_replication(r, opt).bad_coloring, arrows_replication(r).bad_coloring);
}
