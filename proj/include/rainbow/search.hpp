#pragma once

#include "rainbow/arrows.hpp"
#include "rainbow/bounds.hpp"
#include "rainbow/cache.hpp"
#include "rainbow/canonical.hpp"
#include "rainbow/chromatic.hpp"
#include "rainbow/enumerate.hpp"
#include "rainbow/isomorphism.hpp"
#include "rainbow/replication.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <thread>
#include <variant>
#include <vector>

namespace rainbow {

enum class SearchMode { rho, rho_r };
enum class SearchStatus { exact, bounded, exhausted_budget };

inline const char* to_string(SearchMode m) { return m == SearchMode::rho ? "rho" : "rho_R"; }

inline const char* to_string(SearchStatus s)
{
    switch (s) {
    case SearchStatus::exact:
        return "exact";
    case SearchStatus::bounded:
        return "bounded";
    default:
        return "exhausted-budget";
    }
}

class CheckpointError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr int kCheckpointVersion = 1;

struct SearchStats {
    std::uint64_t candidates = 0; // arrow decisions made (cached or not)
    std::uint64_t cache_hits = 0;
    std::uint64_t nodes = 0;
    double wall_ms = 0;
};

struct SearchOutcome {
    SearchMode mode = SearchMode::rho;
    CanonicalForm target;
    SearchStatus status = SearchStatus::bounded;
    long value = 0; // exact value; 0 otherwise
    long lower = 0; // best proven bounds
    long upper = 0;
    std::optional<Graph> witness;  // rho: canonical witness graph
    std::vector<int> witness_sizes; // rho_R: size vector
    std::vector<int> orders_exhausted;
    SearchStats stats;

    /// graph6 of the witness graph, or the size vector as "a,b,c".
    std::string witness_string() const
    {
        if (witness && witness_sizes.empty())
            return to_graph6(*witness);
        std::string s;
        for (std::size_t i = 0; i < witness_sizes.size(); ++i)
            s += (i ? "," : "") + std::to_string(witness_sizes[i]);
        return s;
    }
};

struct SearchOptions {
    int max_order = kEnumerationGuard;
    std::uint64_t budget = 0; // arrow-engine nodes, 0 = unlimited
    int threads = 1;
    std::optional<int> start_order;  // default |h|
    bool start_from_bound = false;   // start at the best closed-form lower bound instead
    std::string checkpoint;          // path; empty = none
    bool resume = false;
    std::uint64_t stop_after_candidates = 0; // simulate an interruption; 0 = never
    std::size_t chunk = 64;                  // candidates per checkpoint step
    ResultCache* cache = nullptr;
    bool allow_large = false;
};

/// Positive integer vectors of length k summing to total, lexicographic.
inline std::vector<std::vector<int>> compositions(int total, int k)
{
    std::vector<std::vector<int>> out;
    if (k <= 0 || total < k)
        return out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int left, int slots) -> void {
        if (slots == 1) {
            cur.push_back(left);
            out.push_back(cur);
            cur.pop_back();
            return;
        }
        for (int a = 1; a <= left - (slots - 1); ++a) {
            cur.push_back(a);
            self(self, left - a, slots - 1);
            cur.pop_back();
        }
    };
    rec(rec, total, k);
    return out;
}

namespace detail {

struct Checkpoint {
    int format_version = kCheckpointVersion;
    std::string mode;
    std::string target;   // canonical graph6 of h
    std::string h_graph6; // labelled h (size vectors refer to it)
    int order = 0;
    std::size_t cursor = 0;    // candidates of `order` already refuted
    std::string cursor_item;   // identity of candidate cursor-1, for integrity
    std::vector<int> orders_exhausted;
    std::uint64_t nodes = 0;
};

inline void save_checkpoint(const std::string& path, const Checkpoint& c)
{
    nlohmann::json j{{"format_version", c.format_version}, {"mode", c.mode},     {"target", c.target},
                     {"h_graph6", c.h_graph6},             {"order", c.order},   {"cursor", c.cursor},
                     {"cursor_item", c.cursor_item},       {"orders_exhausted", c.orders_exhausted},
                     {"nodes", c.nodes}};
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out)
            throw CheckpointError("cannot write checkpoint " + tmp);
        out << j.dump(2) << '\n';
    }
    std::filesystem::rename(tmp, path);
}

inline Checkpoint load_checkpoint(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw CheckpointError("cannot read checkpoint " + path);
    Checkpoint c;
    try {
        auto j = nlohmann::json::parse(in);
        c.format_version = j.at("format_version").get<int>();
        if (c.format_version != kCheckpointVersion)
            throw CheckpointError("checkpoint format version " + std::to_string(c.format_version) +
                                  " is not supported (expected " + std::to_string(kCheckpointVersion) + ")");
        c.mode = j.at("mode").get<std::string>();
        c.target = j.at("target").get<std::string>();
        c.h_graph6 = j.at("h_graph6").get<std::string>();
        c.order = j.at("order").get<int>();
        c.cursor = j.at("cursor").get<std::size_t>();
        c.cursor_item = j.at("cursor_item").get<std::string>();
        c.orders_exhausted = j.at("orders_exhausted").get<std::vector<int>>();
        c.nodes = j.at("nodes").get<std::uint64_t>();
    } catch (const CheckpointError&) {
        throw;
    } catch (const std::exception& e) {
        throw CheckpointError("corrupt checkpoint " + path + ": " + e.what());
    }
    return c;
}

// One candidate at one order: a graph (rho) or a size vector (rho_R).
struct Candidate {
    Graph g;
    std::vector<int> sizes;
    std::string id;
};

class Searcher {
public:
    Searcher(SearchMode mode, const Graph& h, const SearchOptions& opt) : mode_(mode), h_(h), opt_(opt)
    {
        out_.mode = mode;
        out_.target = canonical_form(h);
        report_ = bounds_report(h);
        // rho <= rho_R. The anticlique construction is always an R-witness;
        // the clique-block one only when h is twin-free (it then replicates h).
        out_.lower = report_.best_lower();
        if (mode == SearchMode::rho)
            out_.upper = report_.best_upper();
        else if (replication_cliques(h).size() == static_cast<std::size_t>(h.order()))
            out_.upper = std::min(report_.eq1_upper, report_.eq4_bound);
        else
            out_.upper = report_.eq1_upper;
    }

    SearchOutcome run()
    {
        auto start = std::chrono::steady_clock::now();
        int first = h_.order();
        if (opt_.start_order)
            first = std::max(*opt_.start_order, 1);
        else if (opt_.start_from_bound)
            first = static_cast<int>(out_.lower);
        std::size_t cursor = 0;
        if (opt_.resume) {
            auto c = load_checkpoint(opt_.checkpoint);
            if (c.mode != to_string(mode_))
                throw CheckpointError("checkpoint is for mode " + c.mode + ", not " + to_string(mode_));
            if (c.target != out_.target.graph6())
                throw CheckpointError("checkpoint target " + c.target + " does not match " + out_.target.graph6());
            if (mode_ == SearchMode::rho_r && c.h_graph6 != to_graph6(h_))
                throw CheckpointError("checkpoint was taken for a different labelling of the target");
            first = c.order;
            cursor = c.cursor;
            resume_item_ = c.cursor_item;
            out_.orders_exhausted = c.orders_exhausted;
            nodes_ = c.nodes;
        }

        out_.status = SearchStatus::bounded;
        for (int order = first; order <= opt_.max_order; ++order) {
            auto candidates = candidates_at(order);
            if (cursor > candidates.size() ||
                (cursor > 0 && !resume_item_.empty() && candidates[cursor - 1].id != resume_item_))
                throw CheckpointError("checkpoint cursor does not match the candidate sequence");
            resume_item_.clear();
            auto found = scan(order, candidates, cursor);
            if (stopped_) {
                out_.status = SearchStatus::exhausted_budget;
                break;
            }
            if (found) {
                const auto& w = candidates[*found];
                out_.status = SearchStatus::exact;
                out_.value = order;
                if (mode_ == SearchMode::rho)
                    out_.witness = w.g;
                else {
                    out_.witness = replication_graph(h_, w.sizes).expanded;
                    out_.witness_sizes = w.sizes;
                }
                // everything before the witness is refuted
                checkpoint(order, *found, *found ? candidates[*found - 1].id : "");
                break;
            }
            out_.orders_exhausted.push_back(order);
            cursor = 0;
            checkpoint(order + 1, 0, "");
        }

        std::sort(out_.orders_exhausted.begin(), out_.orders_exhausted.end());
        out_.orders_exhausted.erase(std::unique(out_.orders_exhausted.begin(), out_.orders_exhausted.end()),
                                    out_.orders_exhausted.end());
        long lower = out_.lower;
        while (std::binary_search(out_.orders_exhausted.begin(), out_.orders_exhausted.end(), static_cast<int>(lower)))
            ++lower;
        // Nothing below |h| can contain h at all.
        if (lower < h_.order())
            lower = h_.order();
        out_.lower = lower;
        if (out_.status == SearchStatus::exact)
            out_.lower = out_.upper = out_.value;
        out_.stats.nodes = nodes_;
        out_.stats.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        return out_;
    }

private:
    std::vector<Candidate> candidates_at(int order)
    {
        std::vector<Candidate> out;
        if (mode_ == SearchMode::rho) {
            if (order < h_.order())
                return out;
            // A chi(g)-colouring has a rainbow copy only if chi(g) >= |h|, and
            // a graph without an induced h has no copy at all. Deleting a
            // vertex outside one copy of h lowers chi by at most one, so both
            // conditions can be pushed down the augmentation tree.
            InducedMatcher matcher(h_);
            int k = h_.order();
            auto keep = [&](int n, const Graph& g) {
                if (chromatic_number(g) < k - (order - n))
                    return false;
                return n < k || matcher.find(g, {});
            };
            for (const auto& form : graph_classes_where(order, keep, opt_.allow_large, opt_.threads))
                out.push_back({form.graph(), {}, form.graph6()});
        } else {
            for (auto& sizes : compositions(order, h_.order())) {
                std::string id;
                for (std::size_t i = 0; i < sizes.size(); ++i)
                    id += (i ? "," : "") + std::to_string(sizes[i]);
                out.push_back({Graph(), std::move(sizes), std::move(id)});
            }
        }
        return out;
    }

    ArrowCertificate decide(const Candidate& c, std::uint64_t budget)
    {
        ArrowOptions ao;
        ao.node_budget = budget;
        if (mode_ == SearchMode::rho)
            return cached_arrows(c.g, h_, ao, opt_.cache);
        return cached_arrows_replication(replication_graph(h_, c.sizes), ao, opt_.cache);
    }

    // Tests candidates from `cursor` on in chunks; within a chunk workers
    // share the items but the least passing index wins, so the result does
    // not depend on scheduling.
    std::optional<std::size_t> scan(int order, const std::vector<Candidate>& cands, std::size_t cursor)
    {
        int threads = std::max(1, opt_.threads);
        std::size_t chunk = std::max<std::size_t>(opt_.chunk, static_cast<std::size_t>(threads));
        while (cursor < cands.size()) {
            std::size_t end = std::min(cands.size(), cursor + chunk);
            if (opt_.stop_after_candidates) {
                std::uint64_t left = opt_.stop_after_candidates > done_ ? opt_.stop_after_candidates - done_ : 0;
                if (left == 0) {
                    stopped_ = true;
                    checkpoint(order, cursor, cursor ? cands[cursor - 1].id : "");
                    return std::nullopt;
                }
                end = std::min<std::size_t>(end, cursor + left);
            }
            std::vector<Verdict> verdicts(end - cursor, Verdict::unknown);
            std::atomic<std::size_t> next{cursor};
            std::mutex merge;
            auto work = [&] {
                for (;;) {
                    std::size_t i = next.fetch_add(1);
                    if (i >= end)
                        return;
                    std::uint64_t spent = nodes_.load();
                    if (opt_.budget && spent >= opt_.budget)
                        return;
                    auto cert = decide(cands[i], opt_.budget ? opt_.budget - spent : 0);
                    nodes_ += cert.stats.nodes;
                    verdicts[i - cursor] = cert.verdict;
                    std::lock_guard lock(merge);
                    ++out_.stats.candidates;
                    if (cert.stats.cached)
                        ++out_.stats.cache_hits;
                }
            };
            if (threads == 1 || end - cursor == 1) {
                work();
            } else {
                std::vector<std::thread> pool;
                for (int t = 0; t < threads; ++t)
                    pool.emplace_back(work);
                for (auto& t : pool)
                    t.join();
            }
            done_ += end - cursor;
            for (std::size_t i = cursor; i < end; ++i) {
                Verdict v = verdicts[i - cursor];
                if (v == Verdict::arrows)
                    return i;
                if (v == Verdict::unknown) {
                    // Everything before i is refuted; resume from i.
                    stopped_ = true;
                    checkpoint(order, i, i ? cands[i - 1].id : "");
                    return std::nullopt;
                }
            }
            cursor = end;
            checkpoint(order, cursor, cands[cursor - 1].id);
        }
        return std::nullopt;
    }

    void checkpoint(int order, std::size_t cursor, const std::string& item)
    {
        if (opt_.checkpoint.empty())
            return;
        Checkpoint c;
        c.mode = to_string(mode_);
        c.target = out_.target.graph6();
        c.h_graph6 = to_graph6(h_);
        c.order = order;
        c.cursor = cursor;
        c.cursor_item = item;
        c.orders_exhausted = out_.orders_exhausted;
        c.nodes = nodes_;
        save_checkpoint(opt_.checkpoint, c);
    }

    SearchMode mode_;
    const Graph& h_;
    SearchOptions opt_;
    BoundsReport report_;
    SearchOutcome out_;
    std::atomic<std::uint64_t> nodes_{0};
    std::uint64_t done_ = 0;
    bool stopped_ = false;
    std::string resume_item_;
};

} // namespace detail

/// Exact rho(h) by testing one graph per isomorphism class, order by order,
/// from |h| (or `start_order`) upward. The witness is the least passing
/// canonical form of the first successful order.
inline SearchOutcome rho_exact(const Graph& h, const SearchOptions& opt = {})
{
    return detail::Searcher(SearchMode::rho, h, opt).run();
}

/// Exact rho_R(h) over replication graphs of h: every positive size vector
/// summing to t, lexicographically, for t = |h|, |h|+1, ...
inline SearchOutcome rho_r_search(const Graph& h, const SearchOptions& opt = {})
{
    return detail::Searcher(SearchMode::rho_r, h, opt).run();
}

} // namespace rainbow
