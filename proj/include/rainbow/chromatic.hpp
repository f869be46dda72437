#pragma once

#include "rainbow/graph.hpp"

#include <algorithm>
#include <vector>

namespace rainbow {

namespace detail {

// Exact colouring by DSATUR branching: always branch on the uncoloured vertex
// with the most distinct neighbour colours, try existing colours then one new
// colour, and cut when the colour count reaches the best known.
class DsaturSearch {
public:
    explicit DsaturSearch(const Graph& g)
        : g_(g), n_(g.order()), color_(static_cast<std::size_t>(n_), -1), class_(static_cast<std::size_t>(n_), 0)
    {
    }

    std::vector<int> solve()
    {
        if (n_ == 0)
            return {};
        best_ = greedy();
        best_count_ = count_colors(best_);
        Bits clique = greedy_clique();
        lower_ = popcount(clique);
        // Seed the clique with distinct colours; it breaks colour symmetry.
        int c = 0;
        for_each_bit(clique, [&](int v) { assign(v, c++); });
        used_ = lower_;
        if (best_count_ > lower_)
            branch(n_ - lower_);
        return best_;
    }

private:
    std::vector<int> greedy() const
    {
        std::vector<int> col(static_cast<std::size_t>(n_), -1);
        std::vector<Bits> cls;
        for (int step = 0; step < n_; ++step) {
            int pick = -1, pick_sat = -1, pick_deg = -1;
            for (int v = 0; v < n_; ++v) {
                if (col[static_cast<std::size_t>(v)] >= 0)
                    continue;
                int sat = 0;
                for (Bits c : cls)
                    sat += (c & g_.neighbors(v)) ? 1 : 0;
                int deg = g_.degree(v);
                if (sat > pick_sat || (sat == pick_sat && deg > pick_deg)) {
                    pick = v;
                    pick_sat = sat;
                    pick_deg = deg;
                }
            }
            std::size_t c = 0;
            while (c < cls.size() && (cls[c] & g_.neighbors(pick)))
                ++c;
            if (c == cls.size())
                cls.push_back(0);
            cls[c] |= bit(pick);
            col[static_cast<std::size_t>(pick)] = static_cast<int>(c);
        }
        return col;
    }

    Bits greedy_clique() const
    {
        Bits best = 0;
        for (int s = 0; s < n_; ++s) {
            Bits clique = bit(s), cand = g_.neighbors(s);
            while (cand) {
                int pick = -1, deg = -1;
                for_each_bit(cand, [&](int v) {
                    int d = popcount(g_.neighbors(v) & cand);
                    if (d > deg) {
                        deg = d;
                        pick = v;
                    }
                });
                clique |= bit(pick);
                cand &= g_.neighbors(pick);
            }
            if (popcount(clique) > popcount(best))
                best = clique;
        }
        return best;
    }

    static int count_colors(const std::vector<int>& col)
    {
        int m = -1;
        for (int c : col)
            m = std::max(m, c);
        return m + 1;
    }

    void assign(int v, int c)
    {
        color_[static_cast<std::size_t>(v)] = c;
        class_[static_cast<std::size_t>(c)] |= bit(v);
    }

    void unassign(int v)
    {
        int c = color_[static_cast<std::size_t>(v)];
        class_[static_cast<std::size_t>(c)] &= ~bit(v);
        color_[static_cast<std::size_t>(v)] = -1;
    }

    void branch(int remaining)
    {
        if (best_count_ == lower_)
            return;
        if (remaining == 0) {
            best_ = color_;
            best_count_ = used_;
            return;
        }
        int pick = -1, pick_sat = -1, pick_deg = -1;
        for (int v = 0; v < n_; ++v) {
            if (color_[static_cast<std::size_t>(v)] >= 0)
                continue;
            int sat = 0;
            for (int c = 0; c < used_; ++c)
                sat += (class_[static_cast<std::size_t>(c)] & g_.neighbors(v)) ? 1 : 0;
            if (sat > pick_sat || (sat == pick_sat && g_.degree(v) > pick_deg)) {
                pick = v;
                pick_sat = sat;
                pick_deg = g_.degree(v);
            }
        }
        for (int c = 0; c <= used_ && c < best_count_ - 1; ++c) {
            if (class_[static_cast<std::size_t>(c)] & g_.neighbors(pick))
                continue;
            bool fresh = c == used_;
            assign(pick, c);
            if (fresh)
                ++used_;
            branch(remaining - 1);
            if (fresh)
                --used_;
            unassign(pick);
            if (best_count_ == lower_)
                return;
        }
    }

    const Graph& g_;
    int n_;
    std::vector<int> color_;
    std::vector<Bits> class_;
    std::vector<int> best_;
    int best_count_ = 0;
    int lower_ = 0;
    int used_ = 0;
};

} // namespace detail

/// A proper colouring with chi(g) colours (colours 0..chi-1).
inline std::vector<int> optimal_coloring(const Graph& g) { return detail::DsaturSearch(g).solve(); }

inline int chromatic_number(const Graph& g)
{
    int m = -1;
    for (int c : optimal_coloring(g))
        m = std::max(m, c);
    return m + 1;
}

} // namespace rainbow
