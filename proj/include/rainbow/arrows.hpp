#pragma once

#include "rainbow/graph.hpp"
#include "rainbow/isomorphism.hpp"
#include "rainbow/replication.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <thread>
#include <vector>

namespace rainbow {

class ArrowError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class Verdict { arrows, not_arrows, unknown };

inline const char* to_string(Verdict v)
{
    switch (v) {
    case Verdict::arrows:
        return "arrows";
    case Verdict::not_arrows:
        return "not-arrows";
    default:
        return "unknown";
    }
}

struct ArrowStats {
    std::uint64_t nodes = 0;
    int max_depth = 0;
    std::uint64_t rainbow_prunes = 0;
    double wall_ms = 0;
    bool cached = false;
    bool budget_exhausted = false;
};

/// Outcome of deciding G -> H. `bad_coloring` (colour per vertex of G) is
/// present exactly when the verdict is not-arrows.
struct ArrowCertificate {
    Verdict verdict = Verdict::unknown;
    std::optional<std::vector<int>> bad_coloring;
    ArrowStats stats;
};

struct ArrowOptions {
    std::uint64_t node_budget = 0; // 0 = unlimited
    std::vector<int> vertex_order; // empty = descending degree, ties by index
    int threads = 1;
    bool twin_symmetry = true;
};

inline bool is_proper_coloring(const Graph& g, std::span<const int> coloring)
{
    if (static_cast<int>(coloring.size()) != g.order())
        return false;
    for (int c : coloring)
        if (c < 0 || c >= kMaxOrder)
            return false;
    for (auto [u, v] : g.edges())
        if (coloring[static_cast<std::size_t>(u)] == coloring[static_cast<std::size_t>(v)])
            return false;
    return true;
}

namespace detail {

inline std::vector<Bits> color_classes(std::span<const int> coloring)
{
    std::vector<Bits> classes(kMaxOrder, 0);
    for (std::size_t v = 0; v < coloring.size(); ++v)
        classes[static_cast<std::size_t>(coloring[v])] |= bit(static_cast<int>(v));
    return classes;
}

inline void require_proper(const Graph& g, std::span<const int> coloring)
{
    if (!is_proper_coloring(g, coloring))
        throw ArrowError("coloring is not a total proper coloring of the graph");
}

// Rainbow system of distinct representatives: block b takes demand[b]
// colours (one when no demand is given) from block_colors[b], all chosen
// colours pairwise distinct. Each unit of demand is a separate slot.
class TransversalMatcher {
public:
    bool exists(std::span<const Bits> block_colors, std::span<const int> demand = {})
    {
        slot_block_.clear();
        for (std::size_t b = 0; b < block_colors.size(); ++b) {
            int d = demand.empty() ? 1 : demand[b];
            if (popcount(block_colors[b]) < d)
                return false;
            slot_block_.insert(slot_block_.end(), static_cast<std::size_t>(d), static_cast<int>(b));
        }
        match_.assign(kMaxOrder, -1);
        for (std::size_t slot = 0; slot < slot_block_.size(); ++slot) {
            Bits visited = 0;
            if (!augment(block_colors, static_cast<int>(slot), visited))
                return false;
        }
        return true;
    }

    /// Colours matched to block b, ascending.
    std::vector<int> colors_of_block(int b) const
    {
        std::vector<int> out;
        for (int c = 0; c < kMaxOrder; ++c) {
            int slot = match_[static_cast<std::size_t>(c)];
            if (slot >= 0 && slot_block_[static_cast<std::size_t>(slot)] == b)
                out.push_back(c);
        }
        return out;
    }

private:
    bool augment(std::span<const Bits> block_colors, int slot, Bits& visited)
    {
        Bits options = block_colors[static_cast<std::size_t>(slot_block_[static_cast<std::size_t>(slot)])] & ~visited;
        while (options) {
            int c = lowest_bit(options);
            options &= options - 1;
            visited |= bit(c);
            int other = match_[static_cast<std::size_t>(c)];
            if (other < 0 || augment(block_colors, other, visited)) {
                match_[static_cast<std::size_t>(c)] = slot;
                return true;
            }
        }
        return false;
    }

    std::vector<int> slot_block_;
    std::vector<int> match_;
};

} // namespace detail

/// An embedding of h into g whose image carries pairwise distinct colours,
/// optionally required to contain `must_include`.
inline std::optional<std::vector<int>> find_rainbow_copy(const Graph& g, std::span<const int> coloring, const Graph& h,
                                                         int must_include = -1)
{
    detail::require_proper(g, coloring);
    if (h.order() > g.order())
        return std::nullopt;
    auto classes = detail::color_classes(coloring);
    EmbeddingQuery q;
    q.color = coloring;
    q.color_class = classes;
    q.must_include = must_include;
    std::vector<int> image;
    if (InducedMatcher(h).find(g, q, &image))
        return image;
    return std::nullopt;
}

/// Expanded vertices with pairwise distinct colours, r.demand[b] of them in
/// block b (one per block when demand is empty), grouped by block.
inline std::optional<std::vector<int>> find_rainbow_transversal(const ReplicationStructure& r,
                                                                std::span<const int> coloring)
{
    detail::require_proper(r.expanded, coloring);
    auto blocks = r.blocks();
    std::vector<Bits> block_colors(blocks.size(), 0);
    for (std::size_t b = 0; b < blocks.size(); ++b)
        for_each_bit(blocks[b], [&](int v) { block_colors[b] |= bit(coloring[static_cast<std::size_t>(v)]); });
    detail::TransversalMatcher m;
    if (!m.exists(block_colors, r.demand))
        return std::nullopt;
    std::vector<int> pick;
    for (std::size_t b = 0; b < blocks.size(); ++b)
        for (int c : m.colors_of_block(static_cast<int>(b))) {
            int chosen = -1;
            for_each_bit(blocks[b], [&](int v) {
                if (chosen < 0 && coloring[static_cast<std::size_t>(v)] == c)
                    chosen = v;
            });
            pick.push_back(chosen);
        }
    return pick;
}

/// Partial proper colouring built in a fixed vertex order. Colours follow
/// restricted growth: the vertex at position p gets a colour at most one more
/// than the largest colour at positions < p.
struct ColoringState {
    const Graph* target = nullptr;
    std::vector<int> assignment; // per vertex, -1 = unassigned
    int colors_used = 0;
    std::vector<Bits> color_class;
    Bits colored = 0;

    explicit ColoringState(const Graph& g)
        : target(&g), assignment(static_cast<std::size_t>(g.order()), -1), color_class(kMaxOrder, 0)
    {
    }

    void assign(int v, int c)
    {
        assignment[static_cast<std::size_t>(v)] = c;
        color_class[static_cast<std::size_t>(c)] |= bit(v);
        colored |= bit(v);
        if (c == colors_used)
            ++colors_used;
    }

    void unassign(int v)
    {
        int c = assignment[static_cast<std::size_t>(v)];
        color_class[static_cast<std::size_t>(c)] &= ~bit(v);
        colored &= ~bit(v);
        assignment[static_cast<std::size_t>(v)] = -1;
        if (c == colors_used - 1 && !color_class[static_cast<std::size_t>(c)])
            --colors_used;
    }

    Bits forbidden_colors(int v) const
    {
        Bits nb = target->neighbors(v) & colored;
        Bits out = 0;
        for (int c = 0; c < colors_used; ++c)
            if (color_class[static_cast<std::size_t>(c)] & nb)
                out |= bit(c);
        return out;
    }
};

namespace detail {

/// Depth-first search for a proper colouring with no rainbow copy of the
/// target. Colour symmetry is broken by restricted growth and twin symmetry
/// (vertices with equal closed neighbourhoods, or one replication block) by
/// forcing increasing colours along the vertex order. Both keep the
/// lexicographically least member of every orbit, so the first bad colouring
/// reached is the least one overall. A prefix containing a rainbow copy is
/// cut: the copy survives every extension.
class ArrowSearch {
public:
    enum class Outcome { found, exhausted, budget };

    ArrowSearch(const Graph& g, const Graph& h, const ReplicationStructure* replication, const ArrowOptions& opt,
                std::atomic<std::uint64_t>* shared_nodes)
        : g_(g), h_(h), matcher_(h), state_(g), replication_(replication), budget_(opt.node_budget),
          shared_nodes_(shared_nodes)
    {
        int n = g.order();
        order_ = opt.vertex_order;
        if (order_.empty()) {
            for (int v = 0; v < n; ++v)
                order_.push_back(v);
            std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) { return g.degree(a) > g.degree(b); });
        }
        if (static_cast<int>(order_.size()) != n)
            throw ArrowError("vertex order must list every vertex once");
        std::vector<int> position(static_cast<std::size_t>(n), -1);
        for (int p = 0; p < n; ++p) {
            int v = order_[static_cast<std::size_t>(p)];
            if (v < 0 || v >= n || position[static_cast<std::size_t>(v)] >= 0)
                throw ArrowError("vertex order is not a permutation");
            position[static_cast<std::size_t>(v)] = p;
        }

        std::vector<Bits> twins;
        if (replication_) {
            twins = replication_->blocks();
            block_of_ = replication_->clique_of;
            block_colors_.assign(twins.size(), 0);
            block_count_.assign(twins.size(), 0);
        } else {
            twins = replication_cliques(g);
        }
        prev_twin_.assign(static_cast<std::size_t>(n), -1);
        if (opt.twin_symmetry) {
            for (Bits cls : twins) {
                std::vector<int> members;
                for_each_bit(cls, [&](int v) { members.push_back(v); });
                std::sort(members.begin(), members.end(), [&](int a, int b) {
                    return position[static_cast<std::size_t>(a)] < position[static_cast<std::size_t>(b)];
                });
                for (std::size_t i = 1; i < members.size(); ++i)
                    prev_twin_[static_cast<std::size_t>(position[static_cast<std::size_t>(members[i])])] =
                        members[i - 1];
            }
        }
    }

    const std::vector<int>& order() const { return order_; }
    const ArrowStats& stats() const { return stats_; }
    const std::vector<int>& found_coloring() const { return found_; }

    Outcome run(int from = 0) { return dfs(from); }

    /// Valid prefixes of length `depth`, in search order. Full bad colourings
    /// shorter than `depth` cannot occur because depth < order.
    std::vector<std::vector<int>> prefixes(int depth)
    {
        std::vector<std::vector<int>> out;
        collect(0, depth, out);
        return out;
    }

    void replay(const std::vector<int>& prefix)
    {
        for (std::size_t p = 0; p < prefix.size(); ++p)
            assign(order_[p], prefix[p]);
    }

private:
    void assign(int v, int c)
    {
        state_.assign(v, c);
        if (replication_) {
            auto b = static_cast<std::size_t>(block_of_[static_cast<std::size_t>(v)]);
            if (block_count_[b]++ == 0)
                ++blocks_touched_;
            block_colors_[b] |= bit(c);
        }
    }

    void unassign(int v)
    {
        int c = state_.assignment[static_cast<std::size_t>(v)];
        state_.unassign(v);
        if (replication_) {
            auto b = static_cast<std::size_t>(block_of_[static_cast<std::size_t>(v)]);
            if (--block_count_[b] == 0)
                --blocks_touched_;
            block_colors_[b] &= ~bit(c);
        }
    }

    bool rainbow_with(int v)
    {
        if (replication_) {
            if (blocks_touched_ < static_cast<int>(block_colors_.size()))
                return false;
            return transversal_.exists(block_colors_, replication_->demand);
        }
        if (state_.colors_used < h_.order())
            return false;
        EmbeddingQuery q;
        q.pool = state_.colored;
        q.color = state_.assignment;
        q.color_class = state_.color_class;
        q.must_include = v;
        return matcher_.find(g_, q);
    }

    bool spend()
    {
        ++stats_.nodes;
        if (shared_nodes_) {
            auto total = shared_nodes_->fetch_add(1, std::memory_order_relaxed) + 1;
            return budget_ == 0 || total <= budget_;
        }
        return budget_ == 0 || stats_.nodes <= budget_;
    }

    // Candidate colours for the vertex at position p, in increasing order.
    Bits choices(int p) const
    {
        int v = order_[static_cast<std::size_t>(p)];
        int hi = std::min(state_.colors_used, kMaxOrder - 1);
        Bits allowed = low_bits(hi + 1) & ~state_.forbidden_colors(v);
        int prev = prev_twin_[static_cast<std::size_t>(p)];
        if (prev >= 0)
            allowed &= ~low_bits(state_.assignment[static_cast<std::size_t>(prev)] + 1);
        return allowed;
    }

    Outcome dfs(int p)
    {
        int n = g_.order();
        if (p == n) {
            found_ = state_.assignment;
            return Outcome::found;
        }
        stats_.max_depth = std::max(stats_.max_depth, p + 1);
        int v = order_[static_cast<std::size_t>(p)];
        Bits allowed = choices(p);
        while (allowed) {
            int c = lowest_bit(allowed);
            allowed &= allowed - 1;
            if (!spend()) {
                stats_.budget_exhausted = true;
                return Outcome::budget;
            }
            assign(v, c);
            if (rainbow_with(v)) {
                ++stats_.rainbow_prunes;
                unassign(v);
                continue;
            }
            Outcome r = dfs(p + 1);
            unassign(v);
            if (r != Outcome::exhausted)
                return r;
        }
        return Outcome::exhausted;
    }

    void collect(int p, int depth, std::vector<std::vector<int>>& out)
    {
        if (p == depth) {
            std::vector<int> prefix;
            for (int q = 0; q < depth; ++q)
                prefix.push_back(state_.assignment[static_cast<std::size_t>(order_[static_cast<std::size_t>(q)])]);
            out.push_back(std::move(prefix));
            return;
        }
        int v = order_[static_cast<std::size_t>(p)];
        Bits allowed = choices(p);
        while (allowed) {
            int c = lowest_bit(allowed);
            allowed &= allowed - 1;
            ++stats_.nodes;
            assign(v, c);
            if (rainbow_with(v)) {
                ++stats_.rainbow_prunes;
            } else {
                collect(p + 1, depth, out);
            }
            unassign(v);
        }
    }

    const Graph& g_;
    const Graph& h_;
    InducedMatcher matcher_;
    ColoringState state_;
    const ReplicationStructure* replication_;
    std::vector<int> order_;
    std::vector<int> prev_twin_;
    std::vector<int> block_of_;
    std::vector<Bits> block_colors_;
    std::vector<int> block_count_;
    int blocks_touched_ = 0;
    TransversalMatcher transversal_;
    std::uint64_t budget_;
    std::atomic<std::uint64_t>* shared_nodes_;
    ArrowStats stats_;
    std::vector<int> found_;
};

inline ArrowCertificate certificate_from(ArrowSearch::Outcome outcome, const ArrowSearch& s)
{
    ArrowCertificate cert;
    cert.stats = s.stats();
    if (outcome == ArrowSearch::Outcome::found) {
        cert.verdict = Verdict::not_arrows;
        cert.bad_coloring = s.found_coloring();
    } else if (outcome == ArrowSearch::Outcome::exhausted) {
        cert.verdict = Verdict::arrows;
    }
    return cert;
}

inline ArrowCertificate run_parallel(const Graph& g, const Graph& h, const ReplicationStructure* r,
                                     const ArrowOptions& opt)
{
    std::atomic<std::uint64_t> nodes{0};
    ArrowSearch splitter(g, h, r, opt, nullptr);
    int n = g.order();
    int threads = opt.threads;
    std::vector<std::vector<int>> prefixes;
    int depth = 1;
    for (; depth < n; ++depth) {
        prefixes = ArrowSearch(g, h, r, opt, nullptr).prefixes(depth);
        if (static_cast<int>(prefixes.size()) >= 4 * threads)
            break;
    }
    if (depth >= n || prefixes.empty()) {
        auto outcome = splitter.run();
        return certificate_from(outcome, splitter);
    }

    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> best{prefixes.size()};
    std::atomic<bool> out_of_budget{false};
    std::mutex merge;
    ArrowStats total;
    std::vector<int> best_coloring;
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= prefixes.size() || i > best.load() || out_of_budget.load())
                return;
            ArrowSearch s(g, h, r, opt, &nodes);
            s.replay(prefixes[i]);
            auto outcome = s.run(depth);
            std::lock_guard lock(merge);
            total.nodes += s.stats().nodes;
            total.rainbow_prunes += s.stats().rainbow_prunes;
            total.max_depth = std::max(total.max_depth, s.stats().max_depth);
            if (outcome == ArrowSearch::Outcome::budget)
                out_of_budget = true;
            if (outcome == ArrowSearch::Outcome::found && i < best.load()) {
                best = i;
                best_coloring = s.found_coloring();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
        pool.emplace_back(worker);
    for (auto& t : pool)
        t.join();

    ArrowCertificate cert;
    cert.stats = total;
    if (best.load() < prefixes.size()) {
        // Every prefix before `best` was exhausted unless the budget ran out first.
        cert.verdict = Verdict::not_arrows;
        cert.bad_coloring = best_coloring;
    } else if (!out_of_budget) {
        cert.verdict = Verdict::arrows;
    }
    if (out_of_budget && best.load() < prefixes.size()) {
        // An earlier prefix may hold a smaller bad colouring; it is still a
        // valid certificate, but report the budget stop.
        cert.stats.budget_exhausted = true;
    } else if (out_of_budget) {
        cert.stats.budget_exhausted = true;
    }
    return cert;
}

inline ArrowCertificate decide(const Graph& g, const Graph& h, const ReplicationStructure* r, const ArrowOptions& opt)
{
    auto start = std::chrono::steady_clock::now();
    ArrowCertificate cert;
    if (opt.threads > 1) {
        cert = run_parallel(g, h, r, opt);
    } else {
        ArrowSearch s(g, h, r, opt, nullptr);
        auto outcome = s.run();
        cert = certificate_from(outcome, s);
    }
    cert.stats.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return cert;
}

} // namespace detail

/// Decides G ->r H: does every proper colouring of g contain a rainbow
/// induced copy of h?
inline ArrowCertificate arrows(const Graph& g, const Graph& h, const ArrowOptions& opt = {})
{
    if (h.order() > g.order())
        throw ArrowError("pattern has " + std::to_string(h.order()) + " vertices but the host only " +
                         std::to_string(g.order()));
    return detail::decide(g, h, nullptr, opt);
}

/// Decides G ->R H for a replication graph: does every proper colouring admit
/// a rainbow transversal (one vertex per block, or demand[b] from block b)?
inline ArrowCertificate arrows_replication(const ReplicationStructure& r, const ArrowOptions& opt = {})
{
    if (static_cast<int>(r.clique_of.size()) != r.expanded.order() || r.base.order() == 0)
        throw ArrowError("malformed replication structure");
    if (!r.demand.empty()) {
        if (r.demand.size() != r.sizes.size())
            throw ArrowError("demand vector does not match the block count");
        for (std::size_t b = 0; b < r.demand.size(); ++b)
            if (r.demand[b] < 1 || r.demand[b] > r.sizes[b])
                throw ArrowError("block demand must lie in [1, block size]");
    }
    return detail::decide(r.expanded, r.base, &r, opt);
}

} // namespace rainbow
