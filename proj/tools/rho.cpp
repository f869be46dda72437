// rho: bounds, arrow verification and exact searches for rainbow induced
// subgraphs in proper colorings.
//
// Exit status: 0 success, 1 definitive negative (not-arrows, no witness up
// to --max-order), 2 usage error, 3 budget exhausted, 4 oracle disagreement.

#include "rainbow/rainbow.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using namespace rainbow;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int default_threads()
{
    if (const char* env = std::getenv("RHO_THREADS")) {
        try {
            int t = std::stoi(env);
            if (t >= 1)
                return t;
        } catch (const std::exception&) {
        }
        throw UsageError(std::string("RHO_THREADS must be a positive integer, got '") + env + "'");
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

std::string join_sets(const std::vector<Bits>& sets)
{
    std::string out;
    for (Bits b : sets) {
        out += '{';
        bool first = true;
        for_each_bit(b, [&](int v) {
            out += (first ? "" : ",") + std::to_string(v);
            first = false;
        });
        out += '}';
    }
    return out;
}

std::string join_ints(const std::vector<int>& v)
{
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out += (i ? "," : "") + std::to_string(v[i]);
    return out;
}

void print_bounds(std::ostream& os, const BoundsReport& b)
{
    os << "n=" << b.n << " chi=" << b.chi << " non-edges=" << b.m_prime << '\n';
    os << "theorem1 bounds: " << b.eq1_lower << " <= rho <= " << b.eq1_upper << '\n';
    os << "weak lower: " << b.weak_lower << '\n';
    os << "anticlique partition lower: " << b.eq3_bound << "  " << join_sets(b.eq3_partition) << '\n';
    os << "replication upper: " << b.eq4_bound << "  " << join_sets(b.eq4_block_order) << '\n';
    if (b.path_upper)
        os << "path upper: " << *b.path_upper << '\n';
    if (b.exact)
        os << "exact: " << b.exact->value << " (" << b.exact->family << ")\n";
    os << "best: " << b.best_lower() << " <= rho <= " << b.best_upper() << '\n';
}

struct Common {
    bool json = false;
    int max_order = kEnumerationGuard;
    std::uint64_t budget = 0;
    int threads = 0;
    std::string checkpoint;
    bool resume = false;
    std::string cache;
    bool allow_large = false;
    bool start_from_bound = false;
};

void add_common(CLI::App* app, Common& c, bool search)
{
    app->set_help_flag("--help", "print this help message and exit");
    app->add_flag("--json", c.json, "emit a JSON report");
    app->add_option("--budget", c.budget, "arrow-search node budget (0 = unlimited)");
    app->add_option("--threads", c.threads, "worker threads (default RHO_THREADS or all cores)");
    app->add_option("--cache", c.cache, "JSON-lines result cache file");
    if (search) {
        app->add_option("--max-order", c.max_order, "largest order to search")->check(CLI::Range(1, 64));
        app->add_option("--checkpoint", c.checkpoint, "checkpoint file, rewritten as the search advances");
        app->add_flag("--resume", c.resume, "continue from --checkpoint");
        app->add_flag("--allow-large", c.allow_large, "permit enumeration above order 9");
        app->add_flag("--start-from-bound", c.start_from_bound, "start at the closed-form lower bound");
    }
}

GraphInput graph_arg(const std::string& token, const char* name)
{
    if (token.empty())
        throw UsageError(std::string("missing ") + name);
    return parse_graph_input(token);
}

int emit(const Report& r, bool json, const std::string& text)
{
    if (json)
        std::cout << to_json(r).dump(2) << '\n';
    else
        std::cout << text;
    return 0;
}

std::string command_line(int argc, char** argv)
{
    std::string q;
    for (int i = 1; i < argc; ++i)
        q += (i > 1 ? " " : "") + std::string(argv[i]);
    return q;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Bounds and exact values for rainbow induced subgraphs in proper colorings"};
    app.set_help_flag("--help", "print this help message and exit");
    app.require_subcommand(1);

    Common common;
    std::string g_arg, h_arg, mode = "r", sizes_arg, kind = "theorem4", order_arg;
    bool oracle = false, exhaustive = false;

    auto* bounds = app.add_subcommand("bounds", "closed-form bounds for H");
    bounds->add_option("graph", h_arg, "H (family shorthand, graph6, or file:PATH)");
    bounds->add_option("--h", h_arg, "H");
    add_common(bounds, common, false);

    auto* verify = app.add_subcommand("verify", "decide G -> H (mode r) or G ->R H (mode R)");
    verify->add_option("--g", g_arg, "host G");
    verify->add_option("--h", h_arg, "pattern H");
    verify->add_option("--mode", mode, "r or R")->check(CLI::IsMember({"r", "R"}));
    verify->add_option("--sizes", sizes_arg, "replication sizes a_1,...,a_n applied to H");
    verify->add_flag("--oracle", oracle, "cross-check with the brute-force oracle (|G| <= 8)");
    add_common(verify, common, false);

    auto* rho = app.add_subcommand("rho", "exact rho(H) by exhaustive search");
    rho->add_option("--h", h_arg, "H")->required();
    add_common(rho, common, true);

    auto* rho_r = app.add_subcommand("rho-r", "exact rho_R(H) over replication graphs");
    rho_r->add_option("--h", h_arg, "H")->required();
    add_common(rho_r, common, true);

    auto* construct = app.add_subcommand("construct", "build a witness construction for H");
    construct->add_option("--h", h_arg, "H")->required();
    construct->add_option("--kind", kind, "theorem1 or theorem4")->check(CLI::IsMember({"theorem1", "theorem4"}));
    construct->add_option("--order", order_arg, "vertex order (theorem1) or block order (theorem4)");
    construct->add_flag("--exhaustive", exhaustive, "theorem4: best block order over all permutations");
    add_common(construct, common, false);

    auto* cache_cmd = app.add_subcommand("cache", "inspect a result cache");
    add_common(cache_cmd, common, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    Report report;
    report.query = command_line(argc, argv);
    try {
        int threads = common.threads > 0 ? common.threads : default_threads();
        std::unique_ptr<ResultCache> cache;
        if (!common.cache.empty())
            cache = std::make_unique<ResultCache>(common.cache);

        if (bounds->parsed()) {
            Graph h = graph_arg(h_arg, "graph (positional or --h)").graph;
            report.h = h;
            report.bounds = bounds_report(h);
            std::ostringstream text;
            print_bounds(text, *report.bounds);
            return emit(report, common.json, text.str());
        }

        if (verify->parsed()) {
            ArrowOptions ao;
            ao.node_budget = common.budget;
            ao.threads = threads;
            std::optional<ReplicationStructure> structure;
            Graph g, h;
            if (!sizes_arg.empty()) {
                if (!g_arg.empty())
                    throw UsageError("--sizes builds G from --h; do not also pass --g");
                h = graph_arg(h_arg, "--h").graph;
                try {
                    structure = replication_graph(h, parse_int_list(sizes_arg, "size"));
                } catch (const GraphError& e) {
                    throw UsageError(std::string("--sizes ") + sizes_arg + ": " + e.what());
                }
                g = structure->expanded;
            } else {
                auto gi = graph_arg(g_arg, "--g");
                g = gi.graph;
                structure = gi.replication;
                if (h_arg.empty()) {
                    if (!structure)
                        throw UsageError("missing --h");
                    h = structure->base;
                } else {
                    h = graph_arg(h_arg, "--h").graph;
                }
            }
            if (mode == "R") {
                if (!structure)
                    throw UsageError("mode R needs a replication graph: --g family:params@sizes or --h with --sizes");
                if (to_graph6(structure->base) != to_graph6(h))
                    throw UsageError("mode R: --h must be the base graph of the replication in --g");
            }
            if (h.order() > g.order())
                throw UsageError("H has more vertices than G");
            report.g = g;
            report.h = h;
            ArrowCertificate cert = mode == "R" ? cached_arrows_replication(*structure, ao, cache.get())
                                                : cached_arrows(g, h, ao, cache.get());
            report.certificate = cert;

            std::ostringstream text;
            text << "verdict: " << to_string(cert.verdict) << '\n';
            if (cert.bad_coloring)
                text << "bad coloring: " << join_ints(*cert.bad_coloring) << '\n';
            text << "nodes: " << cert.stats.nodes << (cert.stats.cached ? " (cached)" : "") << '\n';

            int rc = cert.verdict == Verdict::arrows ? 0 : cert.verdict == Verdict::not_arrows ? 1 : 3;
            if (oracle) {
                if (g.order() > 8)
                    throw UsageError("--oracle is limited to hosts with at most 8 vertices");
                bool truth = mode == "R" ? oracle_arrows(*structure) : oracle_arrows(g, h);
                text << "oracle: " << (truth ? "arrows" : "not-arrows") << '\n';
                if (cert.verdict != Verdict::unknown && truth != (cert.verdict == Verdict::arrows)) {
                    std::cerr << "error: search and oracle disagree\n";
                    rc = 4;
                }
            }
            emit(report, common.json, text.str());
            return rc;
        }

        if (rho->parsed() || rho_r->parsed()) {
            Graph h = graph_arg(h_arg, "--h").graph;
            if (common.resume && common.checkpoint.empty())
                throw UsageError("--resume needs --checkpoint");
            SearchOptions so;
            so.max_order = common.max_order;
            so.budget = common.budget;
            so.threads = threads;
            so.checkpoint = common.checkpoint;
            so.resume = common.resume;
            so.cache = cache.get();
            so.allow_large = common.allow_large;
            so.start_from_bound = common.start_from_bound;
            if (so.max_order > kEnumerationGuard && !so.allow_large && rho->parsed())
                throw UsageError("--max-order " + std::to_string(so.max_order) + " needs --allow-large");
            auto outcome = rho->parsed() ? rho_exact(h, so) : rho_r_search(h, so);
            report.h = h;
            report.bounds = bounds_report(h);
            report.search = outcome;

            std::ostringstream text;
            const char* name = rho->parsed() ? "rho" : "rho_R";
            text << "status: " << to_string(outcome.status) << '\n';
            if (outcome.status == SearchStatus::exact)
                text << name << " = " << outcome.value << "  witness " << outcome.witness_string() << '\n';
            else
                text << outcome.lower << " <= " << name << " <= " << outcome.upper << '\n';
            text << "orders exhausted: " << join_ints(outcome.orders_exhausted) << '\n';
            text << "candidates: " << outcome.stats.candidates << "  nodes: " << outcome.stats.nodes << '\n';
            emit(report, common.json, text.str());
            if (outcome.status == SearchStatus::exact)
                return 0;
            return outcome.status == SearchStatus::bounded ? 1 : 3;
        }

        if (construct->parsed()) {
            Graph h = graph_arg(h_arg, "--h").graph;
            std::vector<int> order;
            if (!order_arg.empty())
                order = parse_int_list(order_arg, "order");
            ReplicationStructure s;
            std::optional<ReplicationStructure> quotient;
            std::ostringstream text;
            try {
                if (kind == "theorem1") {
                    if (exhaustive)
                        throw UsageError("--exhaustive applies to theorem4 only");
                    s = theorem1_construction(h, order);
                } else {
                    auto t = !order.empty()   ? theorem4_construction(h, order)
                             : exhaustive     ? theorem4_construction(h, BlockOrdering::exhaustive)
                                              : theorem4_construction(h, BlockOrdering::increasing_size);
                    s = t.structure;
                    quotient = t.quotient;
                    text << "blocks: " << join_sets(t.blocks) << "  extra: " << join_ints(t.extra) << '\n';
                    text << "block sizes: " << join_ints(t.quotient.sizes)
                         << "  rainbow demand: " << join_ints(t.quotient.demand) << '\n';
                }
            } catch (const GraphError& e) {
                throw UsageError(e.what());
            }
            text << "sizes: " << join_ints(s.sizes) << '\n';
            text << "order: " << s.order() << '\n';
            text << "graph6: " << to_graph6(s.expanded) << '\n';
            if (common.json) {
                auto j = to_json(Report{report.query, s.expanded, h, std::nullopt, std::nullopt, std::nullopt});
                j["construction"] = {{"kind", kind}, {"sizes", s.sizes}, {"order", s.order()}};
                if (quotient) {
                    j["construction"]["block_sizes"] = quotient->sizes;
                    j["construction"]["block_demand"] = quotient->demand;
                }
                std::cout << j.dump(2) << '\n';
            } else {
                std::cout << text.str();
            }
            return 0;
        }

        if (cache_cmd->parsed()) {
            if (!cache)
                throw UsageError("cache needs --cache PATH");
            if (common.json) {
                auto j = to_json(report);
                j["cache"] = {{"path", cache->path().string()},
                              {"records", cache->size()},
                              {"skipped_lines", cache->skipped_lines()},
                              {"engine_version", cache->engine_version()}};
                std::cout << j.dump(2) << '\n';
            } else {
                std::cout << "records: " << cache->size() << "\nskipped lines: " << cache->skipped_lines()
                          << "\nengine version: " << cache->engine_version() << '\n';
            }
            return 0;
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const ShorthandError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const CheckpointError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
