#pragma once

// Brute-force reference implementations for the tests. Deliberately naive and
// independent of the library's search code: they only use Graph's adjacency
// queries.

#include "rainbow/graph.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using rainbow::Bits;
using rainbow::Graph;

inline std::string encode(const Graph& g, const std::vector<int>& perm)
{
    std::string s;
    int n = g.order();
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i)
            s.push_back(g.adjacent(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]) ? '1' : '0');
    return s;
}

/// Lexicographically smallest upper-triangle string over all permutations.
inline std::string min_encoding(const Graph& g)
{
    std::vector<int> perm(static_cast<std::size_t>(g.order()));
    std::iota(perm.begin(), perm.end(), 0);
    std::string best = encode(g, perm);
    while (std::next_permutation(perm.begin(), perm.end()))
        best = std::min(best, encode(g, perm));
    return best;
}

inline bool isomorphic(const Graph& a, const Graph& b)
{
    if (a.order() != b.order() || a.edge_count() != b.edge_count())
        return false;
    std::vector<int> perm(static_cast<std::size_t>(a.order()));
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (int i = 0; i < a.order() && ok; ++i)
            for (int j = i + 1; j < a.order() && ok; ++j)
                ok = a.adjacent(i, j) == b.adjacent(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
        if (ok)
            return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

/// Some k-subset of g, under some bijection, induces h.
inline bool contains_induced(const Graph& g, const Graph& h)
{
    int n = g.order(), k = h.order();
    if (k > n)
        return false;
    for (Bits s = 0; s < (Bits{1} << n); ++s) {
        if (std::popcount(s) != k)
            continue;
        std::vector<int> vs;
        for (int v = 0; v < n; ++v)
            if ((s >> v) & 1U)
                vs.push_back(v);
        do {
            bool ok = true;
            for (int i = 0; i < k && ok; ++i)
                for (int j = i + 1; j < k && ok; ++j)
                    ok = h.adjacent(i, j) == g.adjacent(vs[static_cast<std::size_t>(i)], vs[static_cast<std::size_t>(j)]);
            if (ok)
                return true;
        } while (std::next_permutation(vs.begin(), vs.end()));
    }
    return false;
}

inline bool proper(const Graph& g, const std::vector<int>& c)
{
    for (int u = 0; u < g.order(); ++u)
        for (int v = u + 1; v < g.order(); ++v)
            if (g.adjacent(u, v) && c[static_cast<std::size_t>(u)] == c[static_cast<std::size_t>(v)])
                return false;
    return true;
}

/// Smallest k admitting a proper k-colouring, by trying all k^n maps.
inline int chromatic_number(const Graph& g)
{
    int n = g.order();
    if (n == 0)
        return 0;
    for (int k = 1; k <= n; ++k) {
        std::vector<int> c(static_cast<std::size_t>(n), 0);
        for (;;) {
            if (proper(g, c))
                return k;
            int i = 0;
            while (i < n && ++c[static_cast<std::size_t>(i)] == k)
                c[static_cast<std::size_t>(i++)] = 0;
            if (i == n)
                break;
        }
    }
    return n;
}

inline int clique_number(const Graph& g)
{
    int best = 0, n = g.order();
    for (Bits s = 0; s < (Bits{1} << n); ++s) {
        bool ok = true;
        for (int u = 0; u < n && ok; ++u)
            for (int v = u + 1; v < n && ok; ++v)
                if (((s >> u) & 1U) && ((s >> v) & 1U))
                    ok = g.adjacent(u, v);
        if (ok)
            best = std::max(best, std::popcount(s));
    }
    return best;
}

/// Calls f on every restricted-growth string of length n, lexicographically.
template <class F>
void each_rg_string(int n, F&& f)
{
    std::vector<int> c(static_cast<std::size_t>(n), 0);
    for (;;) {
        if (!f(c))
            return;
        int i = n - 1;
        for (; i > 0; --i) {
            int m = *std::max_element(c.begin(), c.begin() + i);
            if (c[static_cast<std::size_t>(i)] <= m)
                break;
        }
        if (i <= 0)
            return;
        ++c[static_cast<std::size_t>(i)];
        std::fill(c.begin() + i + 1, c.end(), 0);
    }
}

inline bool rainbow_copy(const Graph& g, const std::vector<int>& c, const Graph& h)
{
    int n = g.order(), k = h.order();
    for (Bits s = 0; s < (Bits{1} << n); ++s) {
        if (std::popcount(s) != k)
            continue;
        std::vector<int> vs;
        std::set<int> colors;
        for (int v = 0; v < n; ++v)
            if ((s >> v) & 1U) {
                vs.push_back(v);
                colors.insert(c[static_cast<std::size_t>(v)]);
            }
        if (static_cast<int>(colors.size()) != k)
            continue;
        do {
            bool ok = true;
            for (int i = 0; i < k && ok; ++i)
                for (int j = i + 1; j < k && ok; ++j)
                    ok = h.adjacent(i, j) == g.adjacent(vs[static_cast<std::size_t>(i)], vs[static_cast<std::size_t>(j)]);
            if (ok)
                return true;
        } while (std::next_permutation(vs.begin(), vs.end()));
    }
    return false;
}

/// First proper colouring (lexicographic restricted growth in vertex index
/// order) without a rainbow induced h, or nullopt if g arrows h.
inline std::optional<std::vector<int>> first_bad_coloring(const Graph& g, const Graph& h)
{
    std::optional<std::vector<int>> out;
    each_rg_string(g.order(), [&](const std::vector<int>& c) {
        if (proper(g, c) && !rainbow_copy(g, c, h)) {
            out = c;
            return false;
        }
        return true;
    });
    return out;
}

/// Max of sum x(x+1)/2 over all partitions of V(h) into independent sets.
inline long best_anticlique_partition(const Graph& h)
{
    long best = 0;
    int n = h.order();
    each_rg_string(n, [&](const std::vector<int>& c) {
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (h.adjacent(u, v) && c[static_cast<std::size_t>(u)] == c[static_cast<std::size_t>(v)])
                    return true;
        std::vector<long> size(static_cast<std::size_t>(n), 0);
        for (int x : c)
            ++size[static_cast<std::size_t>(x)];
        long total = 0;
        for (long s : size)
            total += s * (s + 1) / 2;
        best = std::max(best, total);
        return true;
    });
    return best;
}

inline Graph random_graph(int n, double p, std::mt19937& rng)
{
    std::bernoulli_distribution coin(p);
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (coin(rng))
                g.add_edge(u, v);
    return g;
}

inline std::vector<int> random_permutation(int n, std::mt19937& rng)
{
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

/// Every labelled graph on n vertices (n <= 6).
inline std::vector<Graph> all_labelled(int n)
{
    std::vector<std::pair<int, int>> pairs;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i)
            pairs.emplace_back(i, j);
    std::vector<Graph> out;
    for (Bits mask = 0; mask < (Bits{1} << pairs.size()); ++mask) {
        Graph g(n);
        for (std::size_t e = 0; e < pairs.size(); ++e)
            if ((mask >> e) & 1U)
                g.add_edge(pairs[e].first, pairs[e].second);
        out.push_back(g);
    }
    return out;
}

} // namespace oracle
