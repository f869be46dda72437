#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rainbow {

/// One machine word per adjacency row; vertex v is bit v.
using Bits = std::uint64_t;

inline constexpr int kMaxOrder = 64;

constexpr Bits bit(int v) { return Bits{1} << v; }
constexpr Bits low_bits(int n) { return n >= 64 ? ~Bits{0} : bit(n) - 1; }
inline int popcount(Bits b) { return std::popcount(b); }
inline int lowest_bit(Bits b) { return std::countr_zero(b); }

template <class F>
inline void for_each_bit(Bits b, F&& f)
{
    while (b) {
        int v = std::countr_zero(b);
        b &= b - 1;
        f(v);
    }
}

class GraphError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

using Edge = std::pair<int, int>;

/// Small simple undirected graph on vertices 0..n-1 (n <= 64) stored as
/// adjacency bitsets. Symmetric and irreflexive by construction.
class Graph {
public:
    Graph() = default;

    explicit Graph(int order) : n_(order)
    {
        if (order < 0 || order > kMaxOrder)
            throw GraphError("graph order " + std::to_string(order) + " outside 0.." + std::to_string(kMaxOrder));
    }

    static Graph from_edges(int order, const std::vector<Edge>& edges)
    {
        Graph g(order);
        for (auto [u, v] : edges)
            g.add_edge(u, v);
        return g;
    }

    int order() const { return n_; }
    Bits vertices() const { return low_bits(n_); }
    Bits neighbors(int v) const { return adj_[v]; }
    bool adjacent(int u, int v) const { return (adj_[u] >> v) & 1U; }
    int degree(int v) const { return popcount(adj_[v]); }

    int edge_count() const
    {
        int twice = 0;
        for (int v = 0; v < n_; ++v)
            twice += popcount(adj_[v]);
        return twice / 2;
    }

    /// Unordered vertex pairs that are not edges.
    long count_non_edges() const
    {
        long pairs = static_cast<long>(n_) * (n_ - 1) / 2;
        return pairs - edge_count();
    }

    void add_edge(int u, int v)
    {
        check_pair(u, v);
        adj_[u] |= bit(v);
        adj_[v] |= bit(u);
    }

    void remove_edge(int u, int v)
    {
        check_pair(u, v);
        adj_[u] &= ~bit(v);
        adj_[v] &= ~bit(u);
    }

    std::vector<Edge> edges() const
    {
        std::vector<Edge> out;
        for (int u = 0; u < n_; ++u)
            for_each_bit(adj_[u] & ~low_bits(u + 1), [&](int v) { out.emplace_back(u, v); });
        return out;
    }

    Graph complement() const
    {
        Graph c(n_);
        for (int v = 0; v < n_; ++v)
            c.adj_[v] = ~adj_[v] & low_bits(n_) & ~bit(v);
        return c;
    }

    /// Subgraph induced by `subset`, relabeled 0..k-1 in increasing vertex order.
    Graph induced(Bits subset) const
    {
        std::vector<int> keep;
        for_each_bit(subset & vertices(), [&](int v) { keep.push_back(v); });
        return induced(keep);
    }

    /// Subgraph induced by `keep`, vertex keep[i] becomes vertex i.
    Graph induced(const std::vector<int>& keep) const
    {
        Graph h(static_cast<int>(keep.size()));
        for (std::size_t i = 0; i < keep.size(); ++i)
            for (std::size_t j = i + 1; j < keep.size(); ++j)
                if (adjacent(keep[i], keep[j]))
                    h.add_edge(static_cast<int>(i), static_cast<int>(j));
        return h;
    }

    /// Graph in which vertex v of *this becomes vertex perm[v].
    Graph relabeled(const std::vector<int>& perm) const
    {
        if (static_cast<int>(perm.size()) != n_)
            throw GraphError("relabeling has wrong length");
        Bits seen = 0;
        for (int p : perm) {
            if (p < 0 || p >= n_ || (seen & bit(p)))
                throw GraphError("relabeling is not a permutation");
            seen |= bit(p);
        }
        Graph h(n_);
        for (int u = 0; u < n_; ++u)
            for_each_bit(adj_[u], [&](int v) { h.adj_[perm[u]] |= bit(perm[v]); });
        return h;
    }

    /// Appends one vertex adjacent to exactly `neighbors`.
    Graph with_vertex(Bits neighbors) const
    {
        if (n_ >= kMaxOrder)
            throw GraphError("cannot grow a graph beyond 64 vertices");
        Graph h = *this;
        h.n_ = n_ + 1;
        neighbors &= low_bits(n_);
        h.adj_[n_] = neighbors;
        for_each_bit(neighbors, [&](int u) { h.adj_[u] |= bit(n_); });
        return h;
    }

    /// Checks symmetry and irreflexivity; used when rows come from outside.
    bool valid() const
    {
        for (int v = 0; v < n_; ++v) {
            if (adj_[v] & ~low_bits(n_))
                return false;
            if (adj_[v] & bit(v))
                return false;
            bool ok = true;
            for_each_bit(adj_[v], [&](int u) { ok = ok && adjacent(u, v); });
            if (!ok)
                return false;
        }
        return true;
    }

    friend bool operator==(const Graph& a, const Graph& b)
    {
        if (a.n_ != b.n_)
            return false;
        for (int v = 0; v < a.n_; ++v)
            if (a.adj_[v] != b.adj_[v])
                return false;
        return true;
    }

private:
    void check_pair(int u, int v) const
    {
        if (u < 0 || v < 0 || u >= n_ || v >= n_)
            throw GraphError("edge (" + std::to_string(u) + "," + std::to_string(v) + ") out of range for order " +
                             std::to_string(n_));
        if (u == v)
            throw GraphError("self-loop at vertex " + std::to_string(u));
    }

    int n_ = 0;
    std::array<Bits, kMaxOrder> adj_{};
};

inline Graph complement(const Graph& g) { return g.complement(); }
inline long count_non_edges(const Graph& g) { return g.count_non_edges(); }

/// Connected components as vertex masks, ordered by lowest vertex.
inline std::vector<Bits> components(const Graph& g)
{
    std::vector<Bits> out;
    Bits left = g.vertices();
    while (left) {
        Bits comp = bit(lowest_bit(left));
        Bits frontier = comp;
        while (frontier) {
            Bits next = 0;
            for_each_bit(frontier, [&](int v) { next |= g.neighbors(v); });
            frontier = next & ~comp;
            comp |= next;
        }
        out.push_back(comp);
        left &= ~comp;
    }
    return out;
}

inline bool is_clique(const Graph& g, Bits set)
{
    bool ok = true;
    for_each_bit(set, [&](int v) { ok = ok && ((g.neighbors(v) | bit(v)) & set) == set; });
    return ok;
}

inline bool is_independent(const Graph& g, Bits set)
{
    bool ok = true;
    for_each_bit(set, [&](int v) { ok = ok && (g.neighbors(v) & set) == 0; });
    return ok;
}

} // namespace rainbow
