#pragma once

#include "rainbow/families.hpp"
#include "rainbow/graph.hpp"
#include "rainbow/graph6.hpp"
#include "rainbow/replication.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rainbow {

class ShorthandError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct GraphInput {
    Graph graph;
    std::optional<ReplicationStructure> replication; // set for `...@sizes`
};

/// "1,2,2,2,3" -> {1,2,2,2,3}. Every entry must be a non-negative integer.
inline std::vector<int> parse_int_list(std::string_view text, std::string_view what = "list")
{
    std::vector<int> out;
    if (text.empty())
        throw ShorthandError(std::string(what) + " is empty");
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        std::string_view tok = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        int value = 0;
        auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
        if (tok.empty() || ec != std::errc() || end != tok.data() + tok.size() || value < 0)
            throw ShorthandError("bad " + std::string(what) + " entry '" + std::string(tok) + "'");
        out.push_back(value);
        if (comma == std::string_view::npos)
            break;
        pos = comma + 1;
    }
    return out;
}

namespace detail {

inline Graph build_family(const std::string& family, const std::vector<int>& p, const std::string& token)
{
    auto want = [&](std::size_t count) {
        if (p.size() != count)
            throw ShorthandError("family '" + family + "' takes " + std::to_string(count) + " parameter(s) in '" +
                                 token + "'");
    };
    try {
        if (family == "path")
            return want(1), path(p[0]);
        if (family == "cycle")
            return want(1), cycle(p[0]);
        if (family == "clique")
            return want(1), clique(p[0]);
        if (family == "anticlique")
            return want(1), anticlique(p[0]);
        if (family == "star")
            return want(1), star(p[0]);
        if (family == "turan")
            return want(2), turan(p[0], p[1]);
        if (family == "kpartite")
            return complete_multipartite(p);
        if (family == "cliques")
            return disjoint_cliques(p);
    } catch (const GraphError& e) {
        throw ShorthandError("'" + token + "': " + e.what());
    }
    throw ShorthandError("unknown graph family '" + family + "' in '" + token + "'");
}

} // namespace detail

/// Parses one graph argument:
///   <family>:<params>[@<sizes>]  e.g. path:5, turan:7,3, kpartite:2,2,3, path:6@2,2,3,3,2,2
///   g6:<graph6> or a bare graph6 string
///   file:<path>                 edge-list file ("n m" then m lines "u v")
inline GraphInput parse_graph_input(const std::string& token)
{
    if (token.empty())
        throw ShorthandError("empty graph argument");
    auto colon = token.find(':');
    if (colon == std::string::npos) {
        try {
            return {parse_graph6(token), std::nullopt};
        } catch (const ParseError& e) {
            throw ShorthandError("'" + token + "' is neither a family shorthand nor graph6: " + e.what());
        }
    }
    std::string head = token.substr(0, colon), rest = token.substr(colon + 1);
    if (head == "g6") {
        try {
            return {parse_graph6(rest), std::nullopt};
        } catch (const ParseError& e) {
            throw ShorthandError("bad graph6 in '" + token + "': " + e.what());
        }
    }
    if (head == "file") {
        std::ifstream in(rest);
        if (!in)
            throw ShorthandError("cannot open edge-list file '" + rest + "'");
        try {
            return {parse_edge_list(in), std::nullopt};
        } catch (const std::exception& e) {
            throw ShorthandError("bad edge list in '" + rest + "': " + e.what());
        }
    }
    std::string params = rest, sizes;
    if (auto at = rest.find('@'); at != std::string::npos) {
        params = rest.substr(0, at);
        sizes = rest.substr(at + 1);
    }
    Graph base = detail::build_family(head, parse_int_list(params, "parameter"), token);
    if (sizes.empty() && rest.find('@') == std::string::npos)
        return {base, std::nullopt};
    try {
        auto r = replication_graph(base, parse_int_list(sizes, "size"));
        Graph g = r.expanded;
        return {g, std::move(r)};
    } catch (const GraphError& e) {
        throw ShorthandError("'" + token + "': " + e.what());
    }
}

} // namespace rainbow
