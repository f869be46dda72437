#pragma once

#include "rainbow/graph.hpp"
#include "rainbow/replication.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

namespace rainbow {

// Reference implementation for cross-checking the search engine. Nothing is
// pruned or shared with it: every restricted-growth string is generated, the
// improper ones are discarded, and rainbow copies are found by trying every
// vertex subset under every bijection.

namespace detail {

inline bool oracle_rainbow_copy(const Graph& g, const std::vector<int>& color, const Graph& h)
{
    int n = g.order(), k = h.order();
    std::vector<int> subset(static_cast<std::size_t>(k));
    std::iota(subset.begin(), subset.end(), 0);
    if (k > n)
        return false;
    for (;;) {
        bool distinct = true;
        for (int i = 0; i < k && distinct; ++i)
            for (int j = i + 1; j < k && distinct; ++j)
                distinct = color[static_cast<std::size_t>(subset[static_cast<std::size_t>(i)])] !=
                           color[static_cast<std::size_t>(subset[static_cast<std::size_t>(j)])];
        if (distinct) {
            std::vector<int> image = subset;
            do {
                bool ok = true;
                for (int i = 0; i < k && ok; ++i)
                    for (int j = i + 1; j < k && ok; ++j)
                        ok = h.adjacent(i, j) ==
                             g.adjacent(image[static_cast<std::size_t>(i)], image[static_cast<std::size_t>(j)]);
                if (ok)
                    return true;
            } while (std::next_permutation(image.begin(), image.end()));
        }
        // next k-subset in lexicographic order
        int i = k - 1;
        while (i >= 0 && subset[static_cast<std::size_t>(i)] == n - k + i)
            --i;
        if (i < 0)
            return false;
        ++subset[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j)
            subset[static_cast<std::size_t>(j)] = subset[static_cast<std::size_t>(j - 1)] + 1;
    }
}

inline bool oracle_transversal(const ReplicationStructure& r, const std::vector<int>& color)
{
    // every choice of demand[b] vertices inside each block b
    auto blocks = r.blocks();
    std::vector<std::vector<Bits>> choices(blocks.size());
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        int want = r.demand.empty() ? 1 : r.demand[b];
        for (Bits s = blocks[b];; s = (s - 1) & blocks[b]) {
            if (popcount(s) == want)
                choices[b].push_back(s);
            if (!s)
                break;
        }
        if (choices[b].empty())
            return false;
    }
    std::vector<std::size_t> pick(blocks.size(), 0);
    for (;;) {
        Bits chosen = 0;
        for (std::size_t b = 0; b < pick.size(); ++b)
            chosen |= choices[b][pick[b]];
        std::vector<int> seen;
        for_each_bit(chosen, [&](int v) { seen.push_back(color[static_cast<std::size_t>(v)]); });
        std::sort(seen.begin(), seen.end());
        if (std::adjacent_find(seen.begin(), seen.end()) == seen.end())
            return true;
        std::size_t i = 0;
        while (i < pick.size() && ++pick[i] == choices[i].size())
            pick[i++] = 0;
        if (i == pick.size())
            return false;
    }
}

template <class Test>
bool oracle_every_coloring(const Graph& g, Test&& rainbow)
{
    int n = g.order();
    if (n > 8)
        throw std::invalid_argument("oracle is limited to graphs with at most 8 vertices");
    std::vector<int> color(static_cast<std::size_t>(n), 0);
    for (;;) {
        bool proper = true;
        for (auto [u, v] : g.edges())
            proper = proper && color[static_cast<std::size_t>(u)] != color[static_cast<std::size_t>(v)];
        if (proper && !rainbow(color))
            return false;
        // next restricted-growth string
        int i = n - 1;
        for (; i > 0; --i) {
            int prefix_max = *std::max_element(color.begin(), color.begin() + i);
            if (color[static_cast<std::size_t>(i)] <= prefix_max)
                break;
        }
        if (i <= 0)
            return true;
        ++color[static_cast<std::size_t>(i)];
        std::fill(color.begin() + i + 1, color.end(), 0);
    }
}

} // namespace detail

/// Brute-force G ->r H.
inline bool oracle_arrows(const Graph& g, const Graph& h)
{
    if (h.order() > g.order())
        return false;
    return detail::oracle_every_coloring(g, [&](const std::vector<int>& c) { return detail::oracle_rainbow_copy(g, c, h); });
}

/// Brute-force G ->R H over a replication structure.
inline bool oracle_arrows(const ReplicationStructure& r)
{
    return detail::oracle_every_coloring(r.expanded,
                                         [&](const std::vector<int>& c) { return detail::oracle_transversal(r, c); });
}

} // namespace rainbow
