#pragma once

#include "rainbow/graph.hpp"

#include <algorithm>
#include <optional>
#include <span>
#include <vector>

namespace rainbow {

/// Constraints on where a pattern may be embedded. With `color` set, the
/// image vertices must carry pairwise distinct colors and `color_class[c]`
/// must list the pool vertices holding color c.
struct EmbeddingQuery {
    Bits pool = ~Bits{0};
    std::span<const int> color{};
    std::span<const Bits> color_class{};
    int must_include = -1;
};

/// Backtracking search for induced embeddings of a fixed pattern graph.
/// Embeddings preserve adjacency and non-adjacency. Patterns are preprocessed
/// once (search plans per root, orbit representatives under Aut(pattern)) so
/// the same matcher can be queried many times from a coloring search.
class InducedMatcher {
public:
    explicit InducedMatcher(const Graph& pattern) : h_(pattern), k_(pattern.order())
    {
        for (int v = 0; v < k_; ++v)
            degree_.push_back(h_.degree(v));
        for (int root = 0; root < k_; ++root)
            plans_.push_back(make_plan(root));
        int start = 0;
        for (int v = 1; v < k_; ++v)
            if (degree_[static_cast<std::size_t>(v)] > degree_[static_cast<std::size_t>(start)])
                start = v;
        if (k_ > 0)
            free_plan_ = make_plan(start);
        compute_root_representatives();
    }

    const Graph& pattern() const { return h_; }

    /// Vertices of the pattern that represent its automorphism orbits.
    const std::vector<int>& root_representatives() const { return roots_; }

    /// On success `image[x]` is the target vertex of pattern vertex x.
    bool find(const Graph& target, const EmbeddingQuery& q, std::vector<int>* image = nullptr) const
    {
        if (k_ == 0)
            return q.must_include < 0;
        Bits pool = q.pool & target.vertices();
        if (popcount(pool) < k_)
            return false;
        std::vector<int> img(static_cast<std::size_t>(k_), -1);
        bool found = false;
        if (q.must_include >= 0) {
            int v = q.must_include;
            if (!(pool & bit(v)))
                return false;
            int avail = popcount(target.neighbors(v) & pool);
            int avail_non = popcount(pool & ~target.neighbors(v) & ~bit(v));
            for (int root : roots_) {
                int d = degree_[static_cast<std::size_t>(root)];
                if (avail < d || avail_non < k_ - 1 - d)
                    continue;
                const Plan& plan = plans_[static_cast<std::size_t>(root)];
                img[static_cast<std::size_t>(root)] = v;
                Bits forbidden = q.color.empty() ? bit(v) : q.color_class[static_cast<std::size_t>(q.color[v])];
                if (extend(target, q, plan, 1, pool, forbidden, img)) {
                    found = true;
                    break;
                }
            }
        } else {
            found = extend(target, q, free_plan_, 0, pool, 0, img);
        }
        if (found && image)
            *image = img;
        return found;
    }

private:
    struct Plan {
        std::vector<int> order;
        // For position p: which earlier positions are adjacent to order[p].
        std::vector<Bits> earlier_adjacent;
    };

    Plan make_plan(int root) const
    {
        Plan plan;
        Bits placed = 0;
        auto bfs_from = [&](int s) {
            std::vector<int> queue{s};
            placed |= bit(s);
            for (std::size_t i = 0; i < queue.size(); ++i) {
                plan.order.push_back(queue[i]);
                for_each_bit(h_.neighbors(queue[i]) & ~placed, [&](int w) {
                    placed |= bit(w);
                    queue.push_back(w);
                });
            }
        };
        bfs_from(root);
        while (placed != h_.vertices()) {
            // Next component: its highest-degree vertex first.
            int best = -1;
            for_each_bit(h_.vertices() & ~placed, [&](int v) {
                if (best < 0 || degree_[static_cast<std::size_t>(v)] > degree_[static_cast<std::size_t>(best)])
                    best = v;
            });
            bfs_from(best);
        }
        for (std::size_t p = 0; p < plan.order.size(); ++p) {
            Bits mask = 0;
            for (std::size_t q = 0; q < p; ++q)
                if (h_.adjacent(plan.order[p], plan.order[q]))
                    mask |= bit(static_cast<int>(q));
            plan.earlier_adjacent.push_back(mask);
        }
        return plan;
    }

    bool extend(const Graph& g, const EmbeddingQuery& q, const Plan& plan, std::size_t p, Bits pool, Bits forbidden,
                std::vector<int>& img) const
    {
        if (p == plan.order.size())
            return true;
        int x = plan.order[p];
        Bits cand = pool & ~forbidden;
        Bits adj_mask = plan.earlier_adjacent[p];
        for (std::size_t r = 0; r < p && cand; ++r) {
            int y = img[static_cast<std::size_t>(plan.order[r])];
            if (adj_mask & bit(static_cast<int>(r)))
                cand &= g.neighbors(y);
            else
                cand &= ~g.neighbors(y);
        }
        int need = degree_[static_cast<std::size_t>(x)];
        while (cand) {
            int v = lowest_bit(cand);
            cand &= cand - 1;
            if (popcount(g.neighbors(v) & pool) < need)
                continue;
            img[static_cast<std::size_t>(x)] = v;
            Bits more = q.color.empty() ? bit(v) : q.color_class[static_cast<std::size_t>(q.color[v])];
            if (extend(g, q, plan, p + 1, pool, forbidden | more, img))
                return true;
        }
        img[static_cast<std::size_t>(x)] = -1;
        return false;
    }

    void compute_root_representatives()
    {
        if (k_ > 12) {
            for (int v = 0; v < k_; ++v)
                roots_.push_back(v);
            return;
        }
        Bits covered = 0;
        for (int u = 0; u < k_; ++u) {
            if (covered & bit(u))
                continue;
            roots_.push_back(u);
            // w is in u's orbit iff some automorphism maps u to w.
            const Plan& plan = plans_[static_cast<std::size_t>(u)];
            for (int w = u; w < k_; ++w) {
                if (covered & bit(w) || degree_[static_cast<std::size_t>(w)] != degree_[static_cast<std::size_t>(u)])
                    continue;
                std::vector<int> img(static_cast<std::size_t>(k_), -1);
                img[static_cast<std::size_t>(u)] = w;
                EmbeddingQuery q;
                if (extend(h_, q, plan, 1, h_.vertices(), bit(w), img))
                    covered |= bit(w);
            }
        }
    }

    Graph h_;
    int k_;
    std::vector<int> degree_;
    std::vector<Plan> plans_;
    Plan free_plan_;
    std::vector<int> roots_;
};

/// An injective map V(h) -> V(g) onto an induced copy of h, if any.
inline std::optional<std::vector<int>> find_induced(const Graph& g, const Graph& h)
{
    if (h.order() > g.order())
        return std::nullopt;
    std::vector<int> image;
    if (InducedMatcher(h).find(g, EmbeddingQuery{}, &image))
        return image;
    return std::nullopt;
}

inline bool contains_induced(const Graph& g, const Graph& h)
{
    if (h.order() > g.order())
        return false;
    return InducedMatcher(h).find(g, EmbeddingQuery{});
}

inline std::vector<int> sorted_degrees(const Graph& g)
{
    std::vector<int> d;
    for (int v = 0; v < g.order(); ++v)
        d.push_back(g.degree(v));
    std::sort(d.begin(), d.end());
    return d;
}

/// Direct isomorphism test; independent of canonical_form.
inline bool is_isomorphic(const Graph& g, const Graph& h)
{
    if (g.order() != h.order() || g.edge_count() != h.edge_count())
        return false;
    if (sorted_degrees(g) != sorted_degrees(h))
        return false;
    return contains_induced(g, h);
}

} // namespace rainbow
