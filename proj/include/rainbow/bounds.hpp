#pragma once

#include "rainbow/canonical.hpp"
#include "rainbow/chromatic.hpp"
#include "rainbow/families.hpp"
#include "rainbow/graph.hpp"
#include "rainbow/isomorphism.hpp"
#include "rainbow/replication.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace rainbow {

struct Theorem1Bounds {
    long lower = 0;
    long upper = 0;
};

/// lower = k (n - chi (k-1)/2) with k = ceil(n/chi); upper = n + non-edges.
/// k(k-1) is even, so the lower bound is always an integer.
inline Theorem1Bounds theorem1_bounds(const Graph& h, int chi)
{
    long n = h.order();
    long k = (n + chi - 1) / chi;
    return {k * n - chi * k * (k - 1) / 2, n + h.count_non_edges()};
}

inline Theorem1Bounds theorem1_bounds(const Graph& h) { return theorem1_bounds(h, chromatic_number(h)); }

/// (n/2)(n/chi + 1), rounded up.
inline long weak_lower_bound(long n, long chi) { return (n * (n + chi) + 2 * chi - 1) / (2 * chi); }

struct PartitionBound {
    long value = 0;
    std::vector<Bits> partition;
};

inline long partition_value(const std::vector<Bits>& partition)
{
    long total = 0;
    for (Bits b : partition) {
        long x = popcount(b);
        total += x * (x + 1) / 2;
    }
    return total;
}

/// Sum of x_i (x_i + 1)/2 over an explicit partition into anticliques.
inline PartitionBound anticlique_partition_bound(const Graph& h, const std::vector<Bits>& partition)
{
    Bits covered = 0;
    for (Bits b : partition) {
        if (!is_independent(h, b))
            throw GraphError("partition block is not an anticlique");
        if (covered & b)
            throw GraphError("partition blocks overlap");
        covered |= b;
    }
    if (covered != h.vertices())
        throw GraphError("partition does not cover every vertex");
    return {partition_value(partition), partition};
}

/// Maximum over all partitions into anticliques, by memoised recursion on the
/// set of unplaced vertices: the lowest unplaced vertex opens a block chosen
/// among the anticliques containing it.
inline PartitionBound anticlique_partition_bound(const Graph& h)
{
    if (h.order() > 24)
        throw GraphError("exact anticlique partition search is limited to 24 vertices");
    std::unordered_map<Bits, long> memo;
    std::function<long(Bits)> best = [&](Bits left) -> long {
        if (!left)
            return 0;
        if (auto it = memo.find(left); it != memo.end())
            return it->second;
        int x = lowest_bit(left);
        Bits cand = left & ~h.neighbors(x) & ~bit(x);
        long result = 0;
        // Enumerate anticliques {x} + S with S inside cand.
        std::function<void(Bits, Bits, long)> grow = [&](Bits chosen, Bits options, long size) {
            result = std::max(result, size * (size + 1) / 2 + best(left & ~chosen));
            while (options) {
                int v = lowest_bit(options);
                options &= options - 1;
                grow(chosen | bit(v), options & ~h.neighbors(v), size + 1);
            }
        };
        grow(bit(x), cand, 1);
        memo.emplace(left, result);
        return result;
    };
    long value = best(h.vertices());

    PartitionBound out{value, {}};
    Bits left = h.vertices();
    while (left) {
        int x = lowest_bit(left);
        long target = best(left);
        Bits found = 0;
        std::function<bool(Bits, Bits, long)> pick = [&](Bits chosen, Bits options, long size) -> bool {
            if (size * (size + 1) / 2 + best(left & ~chosen) == target) {
                found = chosen;
                return true;
            }
            while (options) {
                int v = lowest_bit(options);
                options &= options - 1;
                if (pick(chosen | bit(v), options & ~h.neighbors(v), size + 1))
                    return true;
            }
            return false;
        };
        pick(bit(x), left & ~h.neighbors(x) & ~bit(x), 1);
        out.partition.push_back(found);
        left &= ~found;
    }
    return out;
}

inline long replication_upper_bound(const Graph& h, BlockOrdering ordering = BlockOrdering::increasing_size)
{
    return theorem4_construction(h, ordering).bound();
}

/// Improved upper bound for paths: 1 + n(n-1)/2 - 3 floor(n/7), minus 2 or 1
/// more when n mod 7 is 6 or 5.
inline long path_upper_bound(long n)
{
    if (n < 2)
        throw GraphError("path_upper_bound needs n >= 2");
    long value = 1 + n * (n - 1) / 2 - 3 * (n / 7);
    if (n % 7 == 6)
        value -= 2;
    else if (n % 7 == 5)
        value -= 1;
    return value;
}

struct CompositionBounds {
    long lower = 0;
    long upper = 0;
    long missing_cross_pairs = 0;
};

/// Bounds on the replication value of h1 and h2 joined by `cross_edges`
/// (pairs (u in h1, v in h2)), given the values of the two parts.
inline CompositionBounds rho_r_composition(long h1_value, long h2_value, const Graph& h1, const Graph& h2,
                                           const std::vector<Edge>& cross_edges)
{
    std::vector<bool> seen(static_cast<std::size_t>(h1.order() * h2.order()), false);
    long distinct = 0;
    for (auto [u, v] : cross_edges) {
        if (u < 0 || u >= h1.order() || v < 0 || v >= h2.order())
            throw GraphError("cross edge (" + std::to_string(u) + "," + std::to_string(v) + ") out of range");
        auto idx = static_cast<std::size_t>(u * h2.order() + v);
        if (!seen[idx]) {
            seen[idx] = true;
            ++distinct;
        }
    }
    long m = static_cast<long>(h1.order()) * h2.order() - distinct;
    return {h1_value + h2_value, h1_value + h2_value + m, m};
}

/// Class sizes if h is complete multipartite (non-adjacency is an
/// equivalence relation), largest first.
inline std::optional<std::vector<int>> multipartite_classes(const Graph& h)
{
    std::vector<int> sizes;
    for (Bits comp : components(h.complement())) {
        if (!is_independent(h, comp))
            return std::nullopt;
        // Every vertex outside the class must see the whole class.
        bool joined = true;
        for_each_bit(comp, [&](int v) { joined = joined && (h.neighbors(v) | comp) == h.vertices(); });
        if (!joined)
            return std::nullopt;
        sizes.push_back(popcount(comp));
    }
    std::sort(sizes.rbegin(), sizes.rend());
    return sizes;
}

/// Clique sizes if h is a disjoint union of cliques, largest first.
inline std::optional<std::vector<int>> clique_components(const Graph& h)
{
    std::vector<int> sizes;
    for (Bits comp : components(h)) {
        if (!is_clique(h, comp))
            return std::nullopt;
        sizes.push_back(popcount(comp));
    }
    std::sort(sizes.rbegin(), sizes.rend());
    return sizes;
}

inline bool is_turan(const Graph& h)
{
    auto classes = multipartite_classes(h);
    return classes && classes->front() - classes->back() <= 1;
}

struct ExactValue {
    long value = 0;
    std::string family;
};

/// Closed-form value for recognised families (up to isomorphism): cliques,
/// anticliques, stars, Turan graphs, complete multipartite graphs and
/// disjoint unions of cliques.
inline std::optional<ExactValue> exact_formula(const Graph& h)
{
    long n = h.order();
    if (n == 0)
        return std::nullopt;
    auto confirm = [&](const Graph& model) { return canonical_form(model) == canonical_form(h); };

    if (auto classes = multipartite_classes(h)) {
        const auto& x = *classes;
        if (!confirm(complete_multipartite(x)))
            return std::nullopt;
        long sum = 0;
        for (long xi : x)
            sum += xi * (xi + 1) / 2;
        long r = static_cast<long>(x.size());
        if (r == n)
            return ExactValue{n, "clique"};
        if (r == 1)
            return ExactValue{n * (n + 1) / 2, "anticlique"};
        if (r == 2 && x.back() == 1)
            return ExactValue{n * (n - 1) / 2 + 1, "star"};
        if (x.front() - x.back() <= 1) {
            // n = k r + s with 0 < s <= r; s counts the larger classes.
            long k = (n - 1) / r;
            long s = n - k * r;
            long value = ((n + r - 1) / r) * (n + s) / 2;
            return ExactValue{value, "turan"};
        }
        return ExactValue{sum, "complete_multipartite"};
    }
    if (auto y = clique_components(h)) {
        if (!confirm(disjoint_cliques(*y)))
            return std::nullopt;
        long sum = 0;
        for (std::size_t i = 0; i < y->size(); ++i)
            sum += static_cast<long>(i + 1) * (*y)[i];
        return ExactValue{sum, "disjoint_cliques"};
    }
    return std::nullopt;
}

/// Every closed-form bound for one graph.
struct BoundsReport {
    int n = 0;
    int chi = 0;
    long m_prime = 0;
    long eq1_lower = 0;
    long eq1_upper = 0;
    long weak_lower = 0;
    long eq3_bound = 0;
    std::vector<Bits> eq3_partition;
    long eq4_bound = 0;
    std::vector<Bits> eq4_block_order;
    std::optional<ExactValue> exact;
    std::optional<long> path_upper;

    long best_lower() const { return std::max({eq1_lower, weak_lower, eq3_bound}); }
    long best_upper() const
    {
        long u = std::min(eq1_upper, eq4_bound);
        if (path_upper)
            u = std::min(u, *path_upper);
        return u;
    }
};

inline bool is_path_graph(const Graph& h)
{
    if (h.order() == 1)
        return true;
    if (h.edge_count() != h.order() - 1 || components(h).size() != 1)
        return false;
    for (int v = 0; v < h.order(); ++v)
        if (h.degree(v) > 2)
            return false;
    return true;
}

inline BoundsReport bounds_report(const Graph& h)
{
    BoundsReport r;
    r.n = h.order();
    r.chi = chromatic_number(h);
    r.m_prime = h.count_non_edges();
    auto eq1 = theorem1_bounds(h, r.chi);
    r.eq1_lower = eq1.lower;
    r.eq1_upper = eq1.upper;
    r.weak_lower = weak_lower_bound(r.n, r.chi);
    auto eq3 = anticlique_partition_bound(h);
    r.eq3_bound = eq3.value;
    r.eq3_partition = eq3.partition;
    auto eq4 = theorem4_construction(h, BlockOrdering::increasing_size);
    r.eq4_bound = eq4.bound();
    r.eq4_block_order = eq4.blocks;
    r.exact = exact_formula(h);
    if (r.n >= 2 && is_path_graph(h))
        r.path_upper = path_upper_bound(r.n);
    return r;
}

} // namespace rainbow
