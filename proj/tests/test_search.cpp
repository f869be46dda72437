#include "oracles.hpp"

#include "rainbow/enumerate.hpp"
#include "rainbow/families.hpp"
#include "rainbow/search.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

using namespace rainbow;

namespace {

Graph k1_plus_p3() { return Graph::from_edges(4, {{1, 2}, {2, 3}}); }

std::string temp_path(const std::string& name)
{
    auto dir = std::filesystem::temp_directory_path() / ("rho-search-test-" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    auto p = dir / name;
    std::filesystem::remove(p);
    return p.string();
}

void expect_same(const SearchOutcome& a, const SearchOutcome& b)
{
    EXPECT_EQ(a.status, b.status);
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.lower, b.lower);
    EXPECT_EQ(a.upper, b.upper);
    EXPECT_EQ(a.witness_string(), b.witness_string());
    EXPECT_EQ(a.orders_exhausted, b.orders_exhausted);
}

} // namespace

TEST(Enumerate, Counts)
{
    EXPECT_EQ(enumerate_graphs(1).size(), 1u);
    EXPECT_EQ(enumerate_graphs(4).size(), 11u);
    EXPECT_EQ(enumerate_graphs(7).size(), 1044u);
    auto k5 = enumerate_graphs(5, {[](const Graph& g) { return contains_induced(g, clique(5)); }});
    ASSERT_EQ(k5.size(), 1u);
    EXPECT_EQ(k5[0], clique(5));
}

TEST(Enumerate, OneRepresentativePerClass)
{
    for (int n = 1; n <= 5; ++n) {
        std::set<std::string> brute;
        for (const auto& g : oracle::all_labelled(n))
            brute.insert(oracle::min_encoding(g));
        auto reps = enumerate_graphs(n);
        EXPECT_EQ(reps.size(), brute.size());
        std::set<std::string> seen;
        for (const auto& g : reps)
            seen.insert(oracle::min_encoding(g));
        EXPECT_EQ(seen, brute);
    }
}

TEST(Enumerate, Guard)
{
    EXPECT_THROW(graph_classes(kEnumerationGuard + 1), EnumerationError);
    EXPECT_THROW(enumerate_graphs(kEnumerationGuard + 1), EnumerationError);
    EXPECT_THROW(graph_classes(0), EnumerationError);
}

// Pushing a hereditary filter down the augmentation tree loses nothing.
TEST(Enumerate, FilteredAugmentationMatchesFullList)
{
    auto triangle_free = [](int, const Graph& g) { return !contains_induced(g, clique(3)); };
    for (int n = 3; n <= 7; ++n) {
        std::vector<CanonicalForm> full;
        for (const auto& f : graph_classes(n))
            if (triangle_free(n, f.graph()))
                full.push_back(f);
        EXPECT_EQ(graph_classes_where(n, triangle_free), full) << n;
        EXPECT_EQ(graph_classes_where(n, triangle_free, false, 4), full) << n;
    }
}

TEST(Compositions, Lexicographic)
{
    EXPECT_EQ(compositions(4, 2), (std::vector<std::vector<int>>{{1, 3}, {2, 2}, {3, 1}}));
    EXPECT_EQ(compositions(3, 3).size(), 1u);
    EXPECT_TRUE(compositions(2, 3).empty());
    EXPECT_EQ(compositions(10, 5).size(), 126u);
}

TEST(RhoExact, Examples)
{
    auto p3 = rho_exact(path(3));
    EXPECT_EQ(p3.status, SearchStatus::exact);
    EXPECT_EQ(p3.value, 4);
    EXPECT_EQ(p3.orders_exhausted, (std::vector<int>{3}));

    auto p4 = rho_exact(path(4));
    EXPECT_EQ(p4.value, 7);
    EXPECT_EQ(p4.orders_exhausted, (std::vector<int>{4, 5, 6}));

    auto k4 = rho_exact(clique(4));
    EXPECT_EQ(k4.value, 4);
    EXPECT_TRUE(k4.orders_exhausted.empty());
    EXPECT_EQ(*k4.witness, canonical_form(clique(4)).graph());

    auto two = rho_exact(disjoint_cliques({2, 2}));
    EXPECT_EQ(two.value, 6);
    EXPECT_EQ(two.orders_exhausted, (std::vector<int>{4, 5}));

    for (const auto* o : {&p3, &p4, &k4, &two}) {
        ASSERT_TRUE(o->witness);
        EXPECT_EQ(o->witness->order(), o->value);
    }
    EXPECT_EQ(arrows(*p4.witness, path(4)).verdict, Verdict::arrows);
    EXPECT_EQ(arrows(*two.witness, disjoint_cliques({2, 2})).verdict, Verdict::arrows);
}

// Every order below the value was searched, and the witness is the least
// passing canonical form at its order.
TEST(RhoExact, WitnessMinimality)
{
    Graph h = path(4);
    auto out = rho_exact(h);
    for (int n = h.order(); n < out.value; ++n)
        for (const auto& g : enumerate_graphs(n))
            EXPECT_NE(arrows(g, h).verdict, Verdict::arrows) << to_graph6(g);
    auto witness_form = canonical_form(*out.witness);
    for (const auto& f : graph_classes(static_cast<int>(out.value))) {
        if (!(f < witness_form))
            break;
        EXPECT_NE(arrows(f.graph(), h).verdict, Verdict::arrows) << f.graph6();
    }
}

TEST(RhoExact, WithinClosedFormBounds)
{
    for (int n = 1; n <= 4; ++n)
        for (const auto& h : enumerate_graphs(n)) {
            SearchOptions opt;
            opt.max_order = 8;
            auto out = rho_exact(h, opt);
            auto b = bounds_report(h);
            if (out.status != SearchStatus::exact) {
                EXPECT_GT(b.best_lower(), opt.max_order) << to_graph6(h);
                EXPECT_GE(out.lower, b.best_lower());
                continue;
            }
            EXPECT_GE(out.value, b.eq1_lower) << to_graph6(h);
            EXPECT_LE(out.value, b.eq1_upper) << to_graph6(h);
            EXPECT_GE(out.value, b.eq3_bound) << to_graph6(h);
            if (b.exact) {
                EXPECT_EQ(out.value, b.exact->value) << to_graph6(h);
            }
        }
}

TEST(RhoExact, BoundedAndBudget)
{
    SearchOptions opt;
    opt.max_order = 5;
    auto b = rho_exact(path(4), opt);
    EXPECT_EQ(b.status, SearchStatus::bounded);
    EXPECT_EQ(b.lower, 6);
    EXPECT_EQ(b.upper, 7);
    EXPECT_FALSE(b.witness);

    opt.max_order = 9;
    opt.budget = 20;
    auto e = rho_exact(path(4), opt);
    EXPECT_EQ(e.status, SearchStatus::exhausted_budget);
    EXPECT_LE(e.lower, 7);
}

TEST(RhoExact, StartOrders)
{
    SearchOptions opt;
    opt.start_from_bound = true;
    auto out = rho_exact(path(4), opt);
    EXPECT_EQ(out.value, 7);
    EXPECT_EQ(out.orders_exhausted, (std::vector<int>{6}));
    EXPECT_EQ(out.lower, 7);
}

TEST(RhoRSearch, Examples)
{
    for (int n = 1; n <= 5; ++n) {
        auto k = rho_r_search(clique(n));
        EXPECT_EQ(k.status, SearchStatus::exact);
        EXPECT_EQ(k.value, n);
        EXPECT_EQ(k.witness_sizes, std::vector<int>(static_cast<std::size_t>(n), 1));
    }
    SearchOptions opt;
    opt.max_order = 10;
    auto p5 = rho_r_search(path(5), opt);
    EXPECT_EQ(p5.status, SearchStatus::exact);
    EXPECT_EQ(p5.value, 10);
    EXPECT_EQ(p5.orders_exhausted, (std::vector<int>{5, 6, 7, 8, 9}));
    EXPECT_EQ(arrows_replication(replication_graph(path(5), p5.witness_sizes)).verdict, Verdict::arrows);
}

// Reversal is an automorphism of a path, so a reversed witness vector is a
// witness too.
TEST(RhoRSearch, PathVectorReversal)
{
    for (int n = 2; n <= 5; ++n) {
        SearchOptions opt;
        opt.max_order = 10;
        auto out = rho_r_search(path(n), opt);
        ASSERT_EQ(out.status, SearchStatus::exact);
        auto rev = out.witness_sizes;
        std::reverse(rev.begin(), rev.end());
        EXPECT_EQ(arrows_replication(replication_graph(path(n), rev)).verdict, Verdict::arrows);
    }
}

TEST(RhoRSearch, SeparatesRhoFromRhoR)
{
    SearchOptions opt;
    opt.max_order = 7;
    auto r = rho_r_search(k1_plus_p3(), opt);
    EXPECT_EQ(r.status, SearchStatus::bounded);
    EXPECT_GT(r.lower, 7);
    EXPECT_EQ(r.orders_exhausted, (std::vector<int>{4, 5, 6, 7}));
    auto rho = rho_exact(k1_plus_p3());
    EXPECT_EQ(rho.value, 7);
}

TEST(RhoRSearch, RhoAtMostRhoR)
{
    std::vector<Graph> hs;
    for (int n = 1; n <= 3; ++n)
        for (const auto& g : enumerate_graphs(n))
            hs.push_back(g);
    hs.push_back(path(4));
    hs.push_back(disjoint_cliques({2, 2}));
    hs.push_back(star(4));
    for (const auto& h : hs) {
        SearchOptions opt;
        opt.max_order = 9;
        auto a = rho_exact(h, opt);
        auto b = rho_r_search(h, opt);
        if (a.status == SearchStatus::exact && b.status == SearchStatus::exact) {
            EXPECT_LE(a.value, b.value) << to_graph6(h);
        }
        ASSERT_EQ(b.status, SearchStatus::exact) << to_graph6(h);
        EXPECT_LE(b.value, theorem1_bounds(h).upper) << to_graph6(h);
        if (replication_cliques(h).size() == static_cast<std::size_t>(h.order())) {
            EXPECT_LE(b.value, replication_upper_bound(h)) << to_graph6(h);
        }
    }
}

TEST(Search, ThreadIndependence)
{
    for (const auto& h : {path(4), disjoint_cliques({2, 2}), k1_plus_p3()}) {
        SearchOptions one, many;
        one.max_order = many.max_order = 7;
        many.threads = 4;
        many.chunk = 5;
        expect_same(rho_exact(h, one), rho_exact(h, many));
        expect_same(rho_r_search(h, one), rho_r_search(h, many));
    }
}

TEST(Checkpoint, SaveThenResumeIsIdentical)
{
    SearchOptions opt;
    opt.checkpoint = temp_path("p4.json");
    auto fresh = rho_exact(path(4), opt);
    opt.resume = true;
    auto resumed = rho_exact(path(4), opt);
    expect_same(fresh, resumed);
}

TEST(Checkpoint, InterruptAndResume)
{
    auto reference = rho_exact(path(4));
    std::uint64_t total = reference.stats.candidates;
    ASSERT_GT(total, 10u);
    for (std::uint64_t stop : {std::uint64_t{1}, std::uint64_t{7}, total / 3, total / 2}) {
        SearchOptions opt;
        opt.checkpoint = temp_path("p4-stop.json");
        opt.chunk = 8;
        opt.stop_after_candidates = stop;
        auto cut = rho_exact(path(4), opt);
        EXPECT_EQ(cut.status, SearchStatus::exhausted_budget) << stop;
        opt.stop_after_candidates = 0;
        opt.resume = true;
        expect_same(rho_exact(path(4), opt), reference);
    }
    // interrupt inside order 6 specifically
    SearchOptions opt;
    opt.checkpoint = temp_path("p4-six.json");
    opt.chunk = 4;
    opt.start_order = 6;
    opt.stop_after_candidates = 10;
    rho_exact(path(4), opt);
    auto c = detail::load_checkpoint(opt.checkpoint);
    EXPECT_EQ(c.order, 6);
    EXPECT_EQ(c.cursor, 10u);
    opt.stop_after_candidates = 0;
    opt.resume = true;
    auto out = rho_exact(path(4), opt);
    EXPECT_EQ(out.value, 7);
    EXPECT_EQ(out.witness_string(), reference.witness_string());
}

TEST(Checkpoint, RhoRInterruptAndResume)
{
    SearchOptions opt;
    opt.max_order = 10;
    auto reference = rho_r_search(path(5), opt);
    opt.checkpoint = temp_path("p5r.json");
    opt.chunk = 16;
    opt.stop_after_candidates = 150;
    EXPECT_EQ(rho_r_search(path(5), opt).status, SearchStatus::exhausted_budget);
    opt.stop_after_candidates = 0;
    opt.resume = true;
    expect_same(rho_r_search(path(5), opt), reference);
}

TEST(Checkpoint, Rejections)
{
    SearchOptions opt;
    opt.checkpoint = temp_path("reject.json");
    opt.stop_after_candidates = 3;
    rho_exact(path(4), opt);
    opt.stop_after_candidates = 0;
    opt.resume = true;
    EXPECT_THROW(rho_exact(path(3), opt), CheckpointError);     // wrong target
    EXPECT_THROW(rho_r_search(path(4), opt), CheckpointError);  // wrong mode

    auto c = detail::load_checkpoint(opt.checkpoint);
    auto bad = c;
    bad.cursor_item = "D??";
    detail::save_checkpoint(opt.checkpoint, bad);
    EXPECT_THROW(rho_exact(path(4), opt), CheckpointError);     // corrupt cursor
    bad = c;
    bad.cursor = 1u << 20;
    detail::save_checkpoint(opt.checkpoint, bad);
    EXPECT_THROW(rho_exact(path(4), opt), CheckpointError);

    bad = c;
    bad.format_version = kCheckpointVersion + 1;
    detail::save_checkpoint(opt.checkpoint, bad);
    EXPECT_THROW(rho_exact(path(4), opt), CheckpointError);     // version mismatch

    std::ofstream(opt.checkpoint) << "{\"format_version\": 1, \"mode\": ";
    EXPECT_THROW(rho_exact(path(4), opt), CheckpointError);
    std::filesystem::remove(opt.checkpoint);
    EXPECT_THROW(rho_exact(path(4), opt), CheckpointError);
}
