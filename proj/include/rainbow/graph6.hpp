#pragma once

#include "rainbow/graph.hpp"

#include <istream>
#include <sstream>
#include <string>
#include <string_view>

namespace rainbow {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : std::runtime_error(what + " (at byte " + std::to_string(offset) + ")"), offset_(offset)
    {
    }
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

namespace detail {

inline int g6_value(std::string_view text, std::size_t pos)
{
    if (pos >= text.size())
        throw ParseError("graph6 string truncated", pos);
    auto c = static_cast<unsigned char>(text[pos]);
    if (c < 63 || c > 126)
        throw ParseError("graph6 byte " + std::to_string(c) + " outside 63..126", pos);
    return c - 63;
}

} // namespace detail

/// Decodes a graph6 string. An optional ">>graph6<<" prefix and trailing
/// whitespace are accepted; padding bits in the last byte are ignored.
inline Graph parse_graph6(std::string_view text)
{
    constexpr std::string_view kPrefix = ">>graph6<<";
    std::size_t base = 0;
    if (text.substr(0, kPrefix.size()) == kPrefix)
        base = kPrefix.size();
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r' || text.back() == ' '))
        text.remove_suffix(1);

    std::size_t pos = base;
    if (pos >= text.size())
        throw ParseError("empty graph6 string", pos);
    long n = 0;
    if (static_cast<unsigned char>(text[pos]) == 126) {
        if (pos + 1 < text.size() && static_cast<unsigned char>(text[pos + 1]) == 126)
            throw ParseError("graph6 order needs the 8-byte header; orders above 64 are unsupported", pos);
        for (int k = 1; k <= 3; ++k)
            n = (n << 6) | detail::g6_value(text, pos + k);
        pos += 4;
        if (n > kMaxOrder)
            throw ParseError("graph6 order " + std::to_string(n) + " exceeds 64", base);
    } else {
        n = detail::g6_value(text, pos);
        pos += 1;
    }

    Graph g(static_cast<int>(n));
    long bits = n * (n - 1) / 2;
    std::size_t body = static_cast<std::size_t>((bits + 5) / 6);
    if (text.size() - pos != body)
        throw ParseError("graph6 length mismatch: order " + std::to_string(n) + " needs " + std::to_string(body) +
                             " body bytes, found " + std::to_string(text.size() - pos),
                         text.size() < pos + body ? text.size() : pos + body);

    long k = 0;
    for (int j = 1; j < n; ++j) {
        for (int i = 0; i < j; ++i, ++k) {
            std::size_t at = pos + static_cast<std::size_t>(k / 6);
            int value = detail::g6_value(text, at);
            if ((value >> (5 - k % 6)) & 1)
                g.add_edge(i, j);
        }
    }
    // Validate padding bytes even when no bits are read from them.
    for (std::size_t at = pos; at < text.size(); ++at)
        detail::g6_value(text, at);
    return g;
}

inline std::string to_graph6(const Graph& g)
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
    int acc = 0;
    int filled = 0;
    for (int j = 1; j < n; ++j) {
        for (int i = 0; i < j; ++i) {
            acc = (acc << 1) | (g.adjacent(i, j) ? 1 : 0);
            if (++filled == 6) {
                out.push_back(static_cast<char>(63 + acc));
                acc = 0;
                filled = 0;
            }
        }
    }
    if (filled > 0)
        out.push_back(static_cast<char>(63 + (acc << (6 - filled))));
    return out;
}

/// Edge-list text: "n m" on the first line, then m lines "u v" (0-based).
inline Graph parse_edge_list(std::istream& in)
{
    long n = 0, m = 0;
    if (!(in >> n >> m))
        throw ParseError("edge list header must be \"n m\"", 0);
    if (n < 0 || n > kMaxOrder)
        throw ParseError("edge list order " + std::to_string(n) + " outside 0..64", 0);
    if (m < 0)
        throw ParseError("negative edge count", 0);
    Graph g(static_cast<int>(n));
    for (long e = 0; e < m; ++e) {
        long u = 0, v = 0;
        if (!(in >> u >> v))
            throw ParseError("edge list ended after " + std::to_string(e) + " of " + std::to_string(m) + " edges",
                             static_cast<std::size_t>(e + 1));
        if (u < 0 || v < 0 || u >= n || v >= n || u == v)
            throw ParseError("bad edge " + std::to_string(u) + " " + std::to_string(v),
                             static_cast<std::size_t>(e + 1));
        g.add_edge(static_cast<int>(u), static_cast<int>(v));
    }
    return g;
}

inline Graph parse_edge_list(const std::string& text)
{
    std::istringstream in(text);
    return parse_edge_list(in);
}

inline std::string to_edge_list(const Graph& g)
{
    auto edges = g.edges();
    std::ostringstream out;
    out << g.order() << ' ' << edges.size() << '\n';
    for (auto [u, v] : edges)
        out << u << ' ' << v << '\n';
    return out.str();
}

} // namespace rainbow
