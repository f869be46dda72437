#pragma once

#include "rainbow/canonical.hpp"
#include "rainbow/graph.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_set>
#include <vector>

namespace rainbow {

class EnumerationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

using GraphFilter = std::function<bool(const Graph&)>;

/// Orders above this need an explicit override (order 10 has ~12 million
/// classes).
inline constexpr int kEnumerationGuard = 9;

namespace detail {

// Every graph of order n arises from some graph of order n-1 by adding one
// vertex, so extending one representative per class of order n-1 in every
// possible way and deduplicating by canonical form yields one representative
// per class of order n.
inline std::vector<CanonicalForm> augment(const std::vector<CanonicalForm>& parents, int threads)
{
    threads = std::max(1, threads);
    std::vector<std::unordered_set<std::string>> found(static_cast<std::size_t>(threads));
    int order = parents.empty() ? 1 : parents.front().order() + 1;
    auto work = [&](int t) {
        for (std::size_t i = static_cast<std::size_t>(t); i < parents.size(); i += static_cast<std::size_t>(threads)) {
            Graph parent = parents[i].graph();
            Bits limit = bit(order - 1);
            for (Bits nb = 0; nb < limit; ++nb)
                found[static_cast<std::size_t>(t)].insert(canonical_form(parent.with_vertex(nb)).graph6());
        }
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t)
            pool.emplace_back(work, t);
        for (auto& th : pool)
            th.join();
    }
    for (std::size_t t = 1; t < found.size(); ++t)
        found[0].merge(found[t]);
    std::vector<CanonicalForm> out;
    out.reserve(found[0].size());
    for (const auto& code : found[0])
        out.emplace_back(order, code);
    std::sort(out.begin(), out.end());
    return out;
}

inline int default_threads()
{
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

} // namespace detail

/// One canonical representative per isomorphism class of the given order,
/// sorted by canonical form. Results are memoised for the process lifetime.
inline const std::vector<CanonicalForm>& graph_classes(int order, bool allow_large = false)
{
    if (order < 1)
        throw EnumerationError("enumeration order must be positive");
    if (order > kEnumerationGuard && !allow_large)
        throw EnumerationError("enumeration of order " + std::to_string(order) + " exceeds the guard of " +
                               std::to_string(kEnumerationGuard) + " without an explicit override");
    static std::mutex lock;
    static std::map<int, std::vector<CanonicalForm>> memo;
    std::lock_guard guard(lock);
    if (memo.empty())
        memo.emplace(1, std::vector<CanonicalForm>{canonical_form(Graph(1))});
    int have = memo.rbegin()->first;
    for (int n = have + 1; n <= order; ++n)
        memo.emplace(n, detail::augment(memo.at(n - 1), n >= 8 ? detail::default_threads() : 1));
    return memo.at(order);
}

using LevelFilter = std::function<bool(int order, const Graph&)>;

/// Class representatives of `order` passing `keep`, built by augmenting only
/// the survivors of each smaller order. Sound whenever every graph kept at
/// the top has a vertex whose deletion is kept one level down (e.g. "chi >=
/// k - (order - n)", or "contains an induced h" for n >= |h|). Not memoised.
inline std::vector<CanonicalForm> graph_classes_where(int order, const LevelFilter& keep, bool allow_large = false,
                                                     int threads = 0)
{
    if (order < 1)
        throw EnumerationError("enumeration order must be positive");
    if (order > kEnumerationGuard && !allow_large)
        throw EnumerationError("enumeration of order " + std::to_string(order) + " exceeds the guard of " +
                               std::to_string(kEnumerationGuard) + " without an explicit override");
    if (threads <= 0)
        threads = detail::default_threads();
    std::vector<CanonicalForm> level;
    if (keep(1, Graph(1)))
        level.push_back(canonical_form(Graph(1)));
    for (int n = 2; n <= order && !level.empty(); ++n) {
        auto next = detail::augment(level, level.size() > 256 ? threads : 1);
        std::erase_if(next, [&](const CanonicalForm& f) { return !keep(n, f.graph()); });
        level = std::move(next);
    }
    return level;
}

/// Calls `visit` on each class representative passing every filter, in
/// canonical order. Stops early when `visit` returns false.
inline void for_each_graph(int order, const std::vector<GraphFilter>& filters,
                           const std::function<bool(const Graph&, const CanonicalForm&)>& visit,
                           bool allow_large = false)
{
    for (const auto& form : graph_classes(order, allow_large)) {
        Graph g = form.graph();
        bool keep = true;
        for (const auto& f : filters)
            if (!(keep = f(g)))
                break;
        if (keep && !visit(g, form))
            return;
    }
}

inline std::vector<Graph> enumerate_graphs(int order, const std::vector<GraphFilter>& filters = {},
                                           bool allow_large = false)
{
    std::vector<Graph> out;
    for_each_graph(
        order, filters,
        [&](const Graph& g, const CanonicalForm&) {
            out.push_back(g);
            return true;
        },
        allow_large);
    return out;
}

} // namespace rainbow
