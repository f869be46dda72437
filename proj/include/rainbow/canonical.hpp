#pragma once

#include "rainbow/graph.hpp"
#include "rainbow/graph6.hpp"

#include <compare>
#include <numeric>
#include <string>
#include <vector>

namespace rainbow {

/// Isomorphism-invariant encoding of a graph: the graph6 string of a
/// canonically relabeled copy. Equal forms <=> isomorphic graphs. Ordering
/// is by order, then by the upper-triangle bit string.
class CanonicalForm {
public:
    CanonicalForm() = default;
    CanonicalForm(int order, std::string code) : order_(order), code_(std::move(code)) {}

    int order() const { return order_; }
    const std::string& graph6() const { return code_; }
    Graph graph() const { return parse_graph6(code_); }

    /// Upper-triangle bits x(0,1), x(0,2), x(1,2), x(0,3), ...
    std::vector<bool> bits() const
    {
        Graph g = graph();
        std::vector<bool> out;
        for (int j = 1; j < order_; ++j)
            for (int i = 0; i < j; ++i)
                out.push_back(g.adjacent(i, j));
        return out;
    }

    friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
    friend std::strong_ordering operator<=>(const CanonicalForm& a, const CanonicalForm& b)
    {
        if (auto c = a.order_ <=> b.order_; c != 0)
            return c;
        return a.code_.compare(b.code_) <=> 0;
    }

private:
    int order_ = 0;
    std::string code_;
};

struct CanonicalLabeling {
    std::vector<int> position; // vertex -> canonical index
    CanonicalForm form;
};

namespace detail {

inline std::string encode_in_order(const Graph& g, const std::vector<int>& order)
{
    int n = g.order();
    std::string out;
    if (n <= 62) {
        out.push_back(static_cast<char>(63 + n));
    } else {
        out.push_back(static_cast<char>(126));
        out.push_back(static_cast<char>(63 + ((n >> 12) & 63)));
        out.push_back(static_cast<char>(63 + ((n >> 6) & 63)));
        out.push_back(static_cast<char>(63 + (n & 63)));
    }
    int acc = 0, filled = 0;
    for (int j = 1; j < n; ++j) {
        Bits row = g.neighbors(order[static_cast<std::size_t>(j)]);
        for (int i = 0; i < j; ++i) {
            acc = (acc << 1) | static_cast<int>((row >> order[static_cast<std::size_t>(i)]) & 1U);
            if (++filled == 6) {
                out.push_back(static_cast<char>(63 + acc));
                acc = filled = 0;
            }
        }
    }
    if (filled > 0)
        out.push_back(static_cast<char>(63 + (acc << (6 - filled))));
    return out;
}

/// Equitable refinement of an ordered partition. Splits depend only on the
/// partition structure, never on labels, so the result is isomorphism
/// invariant.
inline void refine(const Graph& g, std::vector<Bits>& cells)
{
    bool changed = true;
    int counts[kMaxOrder];
    while (changed) {
        changed = false;
        for (std::size_t s = 0; s < cells.size(); ++s) {
            Bits splitter = cells[s];
            for (std::size_t c = 0; c < cells.size(); ++c) {
                Bits cell = cells[c];
                if (popcount(cell) == 1)
                    continue;
                int lo = kMaxOrder, hi = -1;
                for_each_bit(cell, [&](int v) {
                    int k = popcount(g.neighbors(v) & splitter);
                    counts[v] = k;
                    lo = std::min(lo, k);
                    hi = std::max(hi, k);
                });
                if (lo == hi)
                    continue;
                std::vector<Bits> parts;
                for (int k = lo; k <= hi; ++k) {
                    Bits part = 0;
                    for_each_bit(cell, [&](int v) {
                        if (counts[v] == k)
                            part |= bit(v);
                    });
                    if (part)
                        parts.push_back(part);
                }
                cells[c] = parts[0];
                cells.insert(cells.begin() + static_cast<std::ptrdiff_t>(c) + 1, parts.begin() + 1, parts.end());
                c += parts.size() - 1;
                changed = true;
            }
        }
    }
}

class CanonicalSearch {
public:
    explicit CanonicalSearch(const Graph& g) : g_(g) {}

    CanonicalLabeling run()
    {
        int n = g_.order();
        if (n == 0)
            return {{}, CanonicalForm(0, encode_in_order(g_, {}))};
        std::vector<Bits> cells{g_.vertices()};
        search(std::move(cells));
        std::vector<int> position(static_cast<std::size_t>(n));
        for (int p = 0; p < n; ++p)
            position[static_cast<std::size_t>(best_order_[static_cast<std::size_t>(p)])] = p;
        return {std::move(position), CanonicalForm(n, best_)};
    }

    const std::vector<std::vector<int>>& automorphisms() const { return generators_; }

private:
    int search(std::vector<Bits> cells)
    {
        refine(g_, cells);
        int depth = static_cast<int>(path_.size());
        std::size_t target = cells.size();
        for (std::size_t i = 0; i < cells.size(); ++i)
            if (popcount(cells[i]) > 1) {
                target = i;
                break;
            }
        if (target == cells.size())
            return leaf(cells, depth);

        Bits cell = cells[target];
        Bits explored = 0;
        std::size_t gens_seen = 0;
        std::vector<int> parent;
        while (cell) {
            int v = lowest_bit(cell);
            cell &= cell - 1;
            if (explored) {
                if (gens_seen != generators_.size()) {
                    build_orbits(parent);
                    gens_seen = generators_.size();
                }
                if (!parent.empty()) {
                    int root = find(parent, v);
                    bool equivalent = false;
                    for_each_bit(explored, [&](int u) { equivalent = equivalent || find(parent, u) == root; });
                    if (equivalent)
                        continue;
                }
            }
            std::vector<Bits> child = cells;
            child[target] = bit(v);
            child.insert(child.begin() + static_cast<std::ptrdiff_t>(target) + 1, cells[target] & ~bit(v));
            path_.push_back(v);
            int resume = search(std::move(child));
            path_.pop_back();
            explored |= bit(v);
            if (resume < depth)
                return resume;
        }
        return depth - 1;
    }

    int leaf(const std::vector<Bits>& cells, int depth)
    {
        std::vector<int> order;
        order.reserve(cells.size());
        for (Bits c : cells)
            order.push_back(lowest_bit(c));
        std::string code = encode_in_order(g_, order);
        if (!have_best_ || code < best_) {
            best_ = std::move(code);
            best_order_ = std::move(order);
            best_path_ = path_;
            have_best_ = true;
            return depth - 1;
        }
        if (code == best_) {
            // Same code: the map between the two labelings is an automorphism,
            // so the current subtree mirrors one already explored.
            std::vector<int> gamma(static_cast<std::size_t>(g_.order()));
            for (std::size_t p = 0; p < order.size(); ++p)
                gamma[static_cast<std::size_t>(best_order_[p])] = order[p];
            generators_.push_back(std::move(gamma));
            std::size_t d = 0;
            while (d < path_.size() && d < best_path_.size() && path_[d] == best_path_[d])
                ++d;
            return static_cast<int>(d);
        }
        return depth - 1;
    }

    // Orbits of the group generated by stored automorphisms fixing path_ pointwise.
    void build_orbits(std::vector<int>& parent) const
    {
        parent.assign(static_cast<std::size_t>(g_.order()), 0);
        std::iota(parent.begin(), parent.end(), 0);
        bool any = false;
        for (const auto& gamma : generators_) {
            bool fixes = true;
            for (int v : path_)
                fixes = fixes && gamma[static_cast<std::size_t>(v)] == v;
            if (!fixes)
                continue;
            any = true;
            for (std::size_t x = 0; x < gamma.size(); ++x) {
                int a = find(parent, static_cast<int>(x)), b = find(parent, gamma[x]);
                if (a != b)
                    parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
            }
        }
        if (!any)
            parent.clear();
    }

    static int find(std::vector<int>& parent, int x)
    {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }

    const Graph& g_;
    std::vector<int> path_;
    bool have_best_ = false;
    std::string best_;
    std::vector<int> best_order_;
    std::vector<int> best_path_;
    std::vector<std::vector<int>> generators_;
};

} // namespace detail

/// Canonical labeling by individualization-refinement: minimum graph6 code
/// over the leaves of the refinement tree, with automorphism pruning.
inline CanonicalLabeling canonical_labeling(const Graph& g) { return detail::CanonicalSearch(g).run(); }

inline CanonicalForm canonical_form(const Graph& g) { return canonical_labeling(g).form; }

inline Graph canonical_graph(const Graph& g) { return canonical_form(g).graph(); }

} // namespace rainbow
