#pragma once

#include "rainbow/graph.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

namespace rainbow {

/// A base graph whose vertex i is replaced by a clique of sizes[i] vertices.
/// Blocks occupy consecutive ranges of the expanded graph in base order.
struct ReplicationStructure {
    Graph base;
    std::vector<int> sizes;
    Graph expanded;
    std::vector<int> clique_of; // expanded vertex -> base vertex
    std::vector<int> demand;    // rainbow vertices wanted per block; empty = one each

    int order() const { return expanded.order(); }

    Bits block(int i) const
    {
        Bits b = 0;
        for (std::size_t v = 0; v < clique_of.size(); ++v)
            if (clique_of[v] == i)
                b |= bit(static_cast<int>(v));
        return b;
    }

    std::vector<Bits> blocks() const
    {
        std::vector<Bits> out(static_cast<std::size_t>(base.order()), 0);
        for (std::size_t v = 0; v < clique_of.size(); ++v)
            out[static_cast<std::size_t>(clique_of[v])] |= bit(static_cast<int>(v));
        return out;
    }
};

inline ReplicationStructure replication_graph(const Graph& h, const std::vector<int>& sizes)
{
    if (static_cast<int>(sizes.size()) != h.order())
        throw GraphError("size vector has " + std::to_string(sizes.size()) + " entries for a graph of order " +
                         std::to_string(h.order()));
    long total = 0;
    for (int s : sizes) {
        if (s < 1)
            throw GraphError("replication sizes must be positive, got " + std::to_string(s));
        total += s;
    }
    if (total > kMaxOrder)
        throw GraphError("replication graph order " + std::to_string(total) + " exceeds 64");

    ReplicationStructure r{h, sizes, Graph(static_cast<int>(total)), {}, {}};
    for (int i = 0; i < h.order(); ++i)
        r.clique_of.insert(r.clique_of.end(), static_cast<std::size_t>(sizes[static_cast<std::size_t>(i)]), i);
    for (int u = 0; u < r.order(); ++u)
        for (int v = u + 1; v < r.order(); ++v) {
            int a = r.clique_of[static_cast<std::size_t>(u)], b = r.clique_of[static_cast<std::size_t>(v)];
            if (a == b || h.adjacent(a, b))
                r.expanded.add_edge(u, v);
        }
    return r;
}

namespace detail {
inline void require_permutation(const std::vector<int>& perm, int n, const char* what)
{
    if (static_cast<int>(perm.size()) != n)
        throw GraphError(std::string(what) + " must list " + std::to_string(n) + " entries");
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int p : perm) {
        if (p < 0 || p >= n || seen[static_cast<std::size_t>(p)])
            throw GraphError(std::string(what) + " is not a permutation");
        seen[static_cast<std::size_t>(p)] = true;
    }
}
} // namespace detail

/// Upper-bound witness: vertex order[i] becomes a clique of size
/// 1 + (non-neighbours among order[0..i-1]).
inline ReplicationStructure theorem1_construction(const Graph& h, std::vector<int> order = {})
{
    if (order.empty()) {
        order.resize(static_cast<std::size_t>(h.order()));
        std::iota(order.begin(), order.end(), 0);
    }
    detail::require_permutation(order, h.order(), "vertex order");
    std::vector<int> sizes(static_cast<std::size_t>(h.order()), 1);
    Bits earlier = 0;
    for (int v : order) {
        sizes[static_cast<std::size_t>(v)] = 1 + popcount(earlier & ~h.neighbors(v));
        earlier |= bit(v);
    }
    return replication_graph(h, sizes);
}

/// Classes of x ~ y <=> xy is an edge and N(x)\{y} = N(y)\{x}, i.e. equal
/// closed neighbourhoods. Ordered by lowest vertex.
inline std::vector<Bits> replication_cliques(const Graph& h)
{
    std::vector<Bits> out;
    Bits left = h.vertices();
    while (left) {
        int x = lowest_bit(left);
        Bits closed = h.neighbors(x) | bit(x);
        Bits cls = 0;
        for_each_bit(left, [&](int y) {
            if ((h.neighbors(y) | bit(y)) == closed)
                cls |= bit(y);
        });
        out.push_back(cls);
        left &= ~cls;
    }
    return out;
}

enum class BlockOrdering { increasing_size, exhaustive };

struct Theorem4Construction {
    std::vector<Bits> blocks;   // replication cliques of h, in the order used
    std::vector<int> extra;     // non-edges from a block vertex back to earlier blocks
    ReplicationStructure quotient;  // h with each block contracted, block i of size y_i + extra_i, demand y_i
    ReplicationStructure structure; // the same graph as a replication of h itself

    int order() const { return structure.order(); }
    long bound() const
    {
        long total = structure.base.order();
        for (int e : extra)
            total += e;
        return total;
    }
};

namespace detail {

inline std::vector<int> block_extras(const Graph& h, const std::vector<Bits>& blocks)
{
    std::vector<int> extra;
    Bits earlier = 0;
    for (Bits b : blocks) {
        int x = lowest_bit(b);
        extra.push_back(popcount(earlier & ~h.neighbors(x)));
        earlier |= b;
    }
    return extra;
}

inline Theorem4Construction build_theorem4(const Graph& h, std::vector<Bits> blocks)
{
    Theorem4Construction t;
    t.extra = block_extras(h, blocks);
    int s = static_cast<int>(blocks.size());
    Graph quotient(s);
    for (int i = 0; i < s; ++i)
        for (int j = i + 1; j < s; ++j)
            if (h.neighbors(lowest_bit(blocks[static_cast<std::size_t>(i)])) & blocks[static_cast<std::size_t>(j)])
                quotient.add_edge(i, j);
    std::vector<int> qsizes;
    std::vector<int> hsizes(static_cast<std::size_t>(h.order()), 1);
    for (int i = 0; i < s; ++i) {
        Bits b = blocks[static_cast<std::size_t>(i)];
        int e = t.extra[static_cast<std::size_t>(i)];
        qsizes.push_back(popcount(b) + e);
        hsizes[static_cast<std::size_t>(lowest_bit(b))] += e;
    }
    t.quotient = replication_graph(quotient, qsizes);
    for (Bits b : blocks)
        t.quotient.demand.push_back(popcount(b));
    t.structure = replication_graph(h, hsizes);
    t.blocks = std::move(blocks);
    return t;
}

} // namespace detail

/// Replication cliques in an explicit order given as a permutation of the
/// default (lowest-vertex) block order.
inline Theorem4Construction theorem4_construction(const Graph& h, const std::vector<int>& block_order)
{
    auto blocks = replication_cliques(h);
    detail::require_permutation(block_order, static_cast<int>(blocks.size()), "block order");
    std::vector<Bits> ordered;
    for (int i : block_order)
        ordered.push_back(blocks[static_cast<std::size_t>(i)]);
    return detail::build_theorem4(h, std::move(ordered));
}

inline Theorem4Construction theorem4_construction(const Graph& h, BlockOrdering ordering = BlockOrdering::increasing_size)
{
    auto blocks = replication_cliques(h);
    if (ordering == BlockOrdering::increasing_size) {
        std::stable_sort(blocks.begin(), blocks.end(),
                         [](Bits a, Bits b) { return popcount(a) < popcount(b); });
        return detail::build_theorem4(h, std::move(blocks));
    }
    if (blocks.size() > 8)
        throw GraphError("exhaustive block ordering allows at most 8 replication cliques, got " +
                         std::to_string(blocks.size()));
    std::vector<int> perm(blocks.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> best_perm = perm;
    long best = -1;
    do {
        std::vector<Bits> ordered;
        for (int i : perm)
            ordered.push_back(blocks[static_cast<std::size_t>(i)]);
        auto extra = detail::block_extras(h, ordered);
        long total = std::accumulate(extra.begin(), extra.end(), 0L);
        if (best < 0 || total < best) {
            best = total;
            best_perm = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return theorem4_construction(h, best_perm);
}

} // namespace rainbow
