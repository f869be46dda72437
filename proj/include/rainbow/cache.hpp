#pragma once

#include "rainbow/arrows.hpp"
#include "rainbow/canonical.hpp"
#include "rainbow/graph6.hpp"
#include "rainbow/replication.hpp"

#include <json.hpp>

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

namespace rainbow {

/// Bumped whenever a change could alter a verdict; older records then miss.
inline constexpr int kEngineVersion = 1;

struct CacheRecord {
    std::string g_canonical;
    std::string h_canonical;
    std::string mode; // "r" or "R"
    Verdict verdict = Verdict::unknown;
    int engine_version = kEngineVersion;
    std::vector<int> sizes;      // R mode only
    std::string g_graph6;        // labelled host the coloring refers to
    std::string h_graph6;        // labelled base (R mode)
    std::optional<std::vector<int>> bad_coloring;
};

inline nlohmann::json to_json(const CacheRecord& r)
{
    nlohmann::json j{{"g_canonical", r.g_canonical}, {"h_canonical", r.h_canonical}, {"mode", r.mode},
                     {"verdict", to_string(r.verdict)}, {"engine_version", r.engine_version},
                     {"g_graph6", r.g_graph6}};
    if (r.mode == "R") {
        j["sizes"] = r.sizes;
        j["h_graph6"] = r.h_graph6;
    }
    j["bad_coloring"] = r.bad_coloring ? nlohmann::json(*r.bad_coloring) : nlohmann::json(nullptr);
    return j;
}

inline CacheRecord cache_record_from_json(const nlohmann::json& j)
{
    CacheRecord r;
    r.g_canonical = j.at("g_canonical").get<std::string>();
    r.h_canonical = j.at("h_canonical").get<std::string>();
    r.mode = j.at("mode").get<std::string>();
    if (r.mode != "r" && r.mode != "R")
        throw std::runtime_error("unknown mode '" + r.mode + "'");
    auto v = j.at("verdict").get<std::string>();
    if (v == "arrows")
        r.verdict = Verdict::arrows;
    else if (v == "not-arrows")
        r.verdict = Verdict::not_arrows;
    else
        throw std::runtime_error("unknown verdict '" + v + "'");
    r.engine_version = j.at("engine_version").get<int>();
    r.g_graph6 = j.value("g_graph6", std::string{});
    r.h_graph6 = j.value("h_graph6", std::string{});
    if (j.contains("sizes"))
        r.sizes = j.at("sizes").get<std::vector<int>>();
    if (j.contains("bad_coloring") && !j.at("bad_coloring").is_null())
        r.bad_coloring = j.at("bad_coloring").get<std::vector<int>>();
    if (r.verdict == Verdict::not_arrows && !r.bad_coloring)
        throw std::runtime_error("not-arrows record without a coloring");
    return r;
}

/// Append-only JSON-lines store of arrow verdicts. Corrupt lines are skipped
/// with a warning. Appends rewrite the file to a temporary and rename it
/// over the original, holding an in-process mutex and an advisory file lock.
class ResultCache {
public:
    explicit ResultCache(std::filesystem::path path, int engine_version = kEngineVersion,
                         std::ostream* warnings = &std::cerr)
        : path_(std::move(path)), engine_version_(engine_version), warn_(warnings)
    {
        std::lock_guard guard(mutex_);
        load();
    }

    const std::filesystem::path& path() const { return path_; }
    int engine_version() const { return engine_version_; }
    std::size_t skipped_lines() const { return skipped_; }

    std::size_t size() const
    {
        std::lock_guard guard(mutex_);
        return index_.size();
    }

    std::optional<CacheRecord> lookup(const std::string& key) const
    {
        std::lock_guard guard(mutex_);
        auto it = index_.find(key);
        if (it == index_.end())
            return std::nullopt;
        return it->second;
    }

    void append(const CacheRecord& record)
    {
        std::string line = to_json(record).dump();
        std::lock_guard guard(mutex_);
        FileLock lock(path_.string() + ".lock");
        std::string existing;
        if (std::ifstream in{path_, std::ios::binary}) {
            std::ostringstream buf;
            buf << in.rdbuf();
            existing = buf.str();
            if (!existing.empty() && existing.back() != '\n')
                existing.push_back('\n');
        }
        std::ostringstream tmp_name;
        tmp_name << path_.string() << ".tmp." << ::getpid() << '.' << std::this_thread::get_id();
        std::filesystem::path tmp = tmp_name.str();
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out)
                throw std::runtime_error("cannot write cache temporary " + tmp.string());
            out << existing << line << '\n';
            if (!out.flush())
                throw std::runtime_error("failed writing cache temporary " + tmp.string());
        }
        std::filesystem::rename(tmp, path_);
        if (record.engine_version == engine_version_)
            index_[key_of(record)] = record;
    }

    static std::string key(const std::string& mode, const std::string& g_canonical, const std::string& h_canonical,
                           const std::vector<int>& sizes = {}, const std::string& h_graph6 = {}, int version = 0)
    {
        std::string k = mode + '|' + g_canonical + '|' + h_canonical + '|';
        for (int s : sizes)
            k += std::to_string(s) + ',';
        return k + '|' + h_graph6 + '|' + std::to_string(version);
    }

    std::string key_of(const CacheRecord& r) const
    {
        return key(r.mode, r.g_canonical, r.h_canonical, r.sizes, r.mode == "R" ? r.h_graph6 : std::string{},
                   r.engine_version);
    }

private:
    struct FileLock {
        int fd;
        explicit FileLock(const std::string& p) : fd(::open(p.c_str(), O_CREAT | O_RDWR, 0644))
        {
            if (fd >= 0)
                ::flock(fd, LOCK_EX);
        }
        ~FileLock()
        {
            if (fd >= 0) {
                ::flock(fd, LOCK_UN);
                ::close(fd);
            }
        }
        FileLock(const FileLock&) = delete;
        FileLock& operator=(const FileLock&) = delete;
    };

    void load()
    {
        std::ifstream in(path_);
        if (!in)
            return;
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.find_first_not_of(" \t\r") == std::string::npos)
                continue;
            try {
                CacheRecord r = cache_record_from_json(nlohmann::json::parse(line));
                if (r.engine_version == engine_version_)
                    index_[key_of(r)] = std::move(r);
            } catch (const std::exception& e) {
                ++skipped_;
                if (warn_)
                    *warn_ << "warning: " << path_.string() << ":" << lineno << ": skipping corrupt cache line ("
                           << e.what() << ")\n";
            }
        }
    }

    std::filesystem::path path_;
    int engine_version_;
    std::ostream* warn_;
    mutable std::mutex mutex_;
    std::unordered_map<std::string, CacheRecord> index_;
    std::size_t skipped_ = 0;
};

namespace detail {

// Carries a coloring of the recorded host over to an isomorphic query host
// through their canonical labelings.
inline std::vector<int> transport_coloring(const std::string& from_graph6, const std::vector<int>& coloring,
                                           const Graph& to)
{
    auto from = canonical_labeling(parse_graph6(from_graph6));
    auto dest = canonical_labeling(to);
    std::vector<int> vertex_at(coloring.size());
    for (std::size_t u = 0; u < coloring.size(); ++u)
        vertex_at[static_cast<std::size_t>(from.position[u])] = static_cast<int>(u);
    std::vector<int> out(coloring.size());
    for (std::size_t v = 0; v < out.size(); ++v)
        out[v] = coloring[static_cast<std::size_t>(vertex_at[static_cast<std::size_t>(dest.position[v])])];
    return out;
}

inline ArrowCertificate from_record(const CacheRecord& r, const Graph& g)
{
    ArrowCertificate cert;
    cert.verdict = r.verdict;
    cert.stats.cached = true;
    if (r.bad_coloring) {
        std::string g6 = to_graph6(g);
        cert.bad_coloring = g6 == r.g_graph6 ? *r.bad_coloring : transport_coloring(r.g_graph6, *r.bad_coloring, g);
    }
    return cert;
}

} // namespace detail

/// arrows() through the cache: a hit skips the search. Budget-limited
/// (unknown) outcomes are never stored.
inline ArrowCertificate cached_arrows(const Graph& g, const Graph& h, const ArrowOptions& opt, ResultCache* cache)
{
    if (!cache)
        return arrows(g, h, opt);
    std::string gc = canonical_form(g).graph6(), hc = canonical_form(h).graph6();
    if (auto hit = cache->lookup(ResultCache::key("r", gc, hc, {}, {}, cache->engine_version())))
        return detail::from_record(*hit, g);
    auto cert = arrows(g, h, opt);
    if (cert.verdict != Verdict::unknown) {
        CacheRecord r{gc, hc, "r", cert.verdict, cache->engine_version(), {}, to_graph6(g), {}, cert.bad_coloring};
        cache->append(r);
    }
    return cert;
}

/// R-mode verdicts depend on the labelled base and size vector, so both are
/// part of the key alongside the canonical forms.
inline ArrowCertificate cached_arrows_replication(const ReplicationStructure& s, const ArrowOptions& opt,
                                                  ResultCache* cache)
{
    if (!cache || !s.demand.empty())
        return arrows_replication(s, opt);
    std::string gc = canonical_form(s.expanded).graph6(), hc = canonical_form(s.base).graph6();
    std::string hg6 = to_graph6(s.base);
    if (auto hit = cache->lookup(ResultCache::key("R", gc, hc, s.sizes, hg6, cache->engine_version()))) {
        ArrowCertificate cert;
        cert.verdict = hit->verdict;
        cert.bad_coloring = hit->bad_coloring;
        cert.stats.cached = true;
        return cert;
    }
    auto cert = arrows_replication(s, opt);
    if (cert.verdict != Verdict::unknown) {
        CacheRecord r{gc, hc, "R", cert.verdict, cache->engine_version(), s.sizes, to_graph6(s.expanded), hg6,
                      cert.bad_coloring};
        cache->append(r);
    }
    return cert;
}

} // namespace rainbow
