#pragma once

#include "rainbow/arrows.hpp"
#include "rainbow/bounds.hpp"
#include "rainbow/cache.hpp"
#include "rainbow/graph6.hpp"
#include "rainbow/search.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace rainbow {

// Report layout (keys always present, null when not applicable):
// {query, graphs:{g,h}, bounds:{eq1_lower,eq1_upper,eq3,eq4,weak_lower,exact,path_upper},
//  verdict, bad_coloring, search:{status,value,witness,orders_exhausted}, stats, engine_version}

inline nlohmann::json to_json(const BoundsReport& b)
{
    nlohmann::json j{{"eq1_lower", b.eq1_lower}, {"eq1_upper", b.eq1_upper}, {"eq3", b.eq3_bound},
                     {"eq4", b.eq4_bound},       {"weak_lower", b.weak_lower}};
    j["exact"] = b.exact ? nlohmann::json(b.exact->value) : nlohmann::json(nullptr);
    j["exact_family"] = b.exact ? nlohmann::json(b.exact->family) : nlohmann::json(nullptr);
    j["path_upper"] = b.path_upper ? nlohmann::json(*b.path_upper) : nlohmann::json(nullptr);
    j["n"] = b.n;
    j["chi"] = b.chi;
    j["m_prime"] = b.m_prime;
    auto sets = [](const std::vector<Bits>& blocks) {
        nlohmann::json out = nlohmann::json::array();
        for (Bits b : blocks) {
            std::vector<int> vs;
            for_each_bit(b, [&](int v) { vs.push_back(v); });
            out.push_back(vs);
        }
        return out;
    };
    j["eq3_partition"] = sets(b.eq3_partition);
    j["eq4_blocks"] = sets(b.eq4_block_order);
    return j;
}

inline nlohmann::json to_json(const ArrowStats& s)
{
    return {{"nodes", s.nodes},   {"max_depth", s.max_depth}, {"rainbow_prunes", s.rainbow_prunes},
            {"wall_ms", s.wall_ms}, {"cached", s.cached},       {"budget_exhausted", s.budget_exhausted}};
}

inline nlohmann::json to_json(const SearchOutcome& o)
{
    nlohmann::json j{{"status", to_string(o.status)},
                     {"mode", to_string(o.mode)},
                     {"target", o.target.graph6()},
                     {"lower", o.lower},
                     {"upper", o.upper},
                     {"orders_exhausted", o.orders_exhausted}};
    j["value"] = o.status == SearchStatus::exact ? nlohmann::json(o.value) : nlohmann::json(nullptr);
    j["witness"] = o.status == SearchStatus::exact ? nlohmann::json(o.witness_string()) : nlohmann::json(nullptr);
    if (o.status == SearchStatus::exact && !o.witness_sizes.empty())
        j["witness_graph6"] = to_graph6(*o.witness);
    return j;
}

inline nlohmann::json to_json(const SearchStats& s)
{
    return {{"candidates", s.candidates}, {"cache_hits", s.cache_hits}, {"nodes", s.nodes}, {"wall_ms", s.wall_ms}};
}

struct Report {
    std::string query;
    std::optional<Graph> g;
    std::optional<Graph> h;
    std::optional<BoundsReport> bounds;
    std::optional<ArrowCertificate> certificate;
    std::optional<SearchOutcome> search;
};

inline nlohmann::json to_json(const Report& r)
{
    nlohmann::json j;
    j["query"] = r.query;
    j["graphs"] = {{"g", r.g ? nlohmann::json(to_graph6(*r.g)) : nlohmann::json(nullptr)},
                   {"h", r.h ? nlohmann::json(to_graph6(*r.h)) : nlohmann::json(nullptr)}};
    j["bounds"] = r.bounds ? to_json(*r.bounds) : nlohmann::json(nullptr);
    j["verdict"] = r.certificate ? nlohmann::json(to_string(r.certificate->verdict)) : nlohmann::json(nullptr);
    j["bad_coloring"] = r.certificate && r.certificate->bad_coloring ? nlohmann::json(*r.certificate->bad_coloring)
                                                                     : nlohmann::json(nullptr);
    j["search"] = r.search ? to_json(*r.search) : nlohmann::json(nullptr);
    if (r.certificate)
        j["stats"] = to_json(r.certificate->stats);
    else if (r.search)
        j["stats"] = to_json(r.search->stats);
    else
        j["stats"] = nullptr;
    j["engine_version"] = kEngineVersion;
    return j;
}

/// Structural check of an emitted report against the layout above.
inline bool report_schema_ok(const nlohmann::json& j, std::string* why = nullptr)
{
    auto fail = [&](const std::string& m) {
        if (why)
            *why = m;
        return false;
    };
    for (const char* k : {"query", "graphs", "bounds", "verdict", "bad_coloring", "search", "stats", "engine_version"})
        if (!j.contains(k))
            return fail(std::string("missing key ") + k);
    if (!j["query"].is_string() || !j["graphs"].is_object() || !j["graphs"].contains("g") ||
        !j["graphs"].contains("h") || !j["engine_version"].is_number_integer())
        return fail("bad query/graphs/engine_version");
    if (!j["bounds"].is_null()) {
        for (const char* k : {"eq1_lower", "eq1_upper", "eq3", "eq4", "weak_lower", "exact", "path_upper"})
            if (!j["bounds"].contains(k))
                return fail(std::string("bounds missing ") + k);
    }
    if (!j["verdict"].is_null()) {
        auto v = j["verdict"].get<std::string>();
        if (v != "arrows" && v != "not-arrows" && v != "unknown")
            return fail("bad verdict " + v);
        if ((v == "not-arrows") != j["bad_coloring"].is_array())
            return fail("bad_coloring must accompany not-arrows");
    }
    if (!j["search"].is_null()) {
        for (const char* k : {"status", "value", "witness", "orders_exhausted"})
            if (!j["search"].contains(k))
                return fail(std::string("search missing ") + k);
    }
    return true;
}

} // namespace rainbow
