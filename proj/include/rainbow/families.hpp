#pragma once

#include "rainbow/graph.hpp"

#include <numeric>
#include <string>
#include <vector>

namespace rainbow {

namespace detail {
inline void require_positive(int n, const char* what)
{
    if (n < 1)
        throw GraphError(std::string(what) + " needs a positive vertex count, got " + std::to_string(n));
}
} // namespace detail

/// P_n: vertices 0-1-...-(n-1).
inline Graph path(int n)
{
    detail::require_positive(n, "path");
    Graph g(n);
    for (int v = 0; v + 1 < n; ++v)
        g.add_edge(v, v + 1);
    return g;
}

inline Graph clique(int n)
{
    detail::require_positive(n, "clique");
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            g.add_edge(u, v);
    return g;
}

inline Graph anticlique(int n)
{
    detail::require_positive(n, "anticlique");
    return Graph(n);
}

/// S_n = K_{1,n-1}; vertex 0 is the centre.
inline Graph star(int n)
{
    detail::require_positive(n, "star");
    Graph g(n);
    for (int v = 1; v < n; ++v)
        g.add_edge(0, v);
    return g;
}

inline Graph cycle(int n)
{
    if (n < 3)
        throw GraphError("cycle needs at least 3 vertices, got " + std::to_string(n));
    Graph g = path(n);
    g.add_edge(n - 1, 0);
    return g;
}

/// K_{x_1,...,x_k}; classes occupy consecutive vertex ranges in the given order.
inline Graph complete_multipartite(const std::vector<int>& sizes)
{
    if (sizes.empty())
        throw GraphError("complete multipartite graph needs at least one class");
    for (int s : sizes)
        detail::require_positive(s, "multipartite class");
    int n = std::accumulate(sizes.begin(), sizes.end(), 0);
    if (n > kMaxOrder)
        throw GraphError("complete multipartite graph exceeds 64 vertices");
    std::vector<int> cls;
    for (std::size_t c = 0; c < sizes.size(); ++c)
        cls.insert(cls.end(), static_cast<std::size_t>(sizes[c]), static_cast<int>(c));
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (cls[static_cast<std::size_t>(u)] != cls[static_cast<std::size_t>(v)])
                g.add_edge(u, v);
    return g;
}

/// Class sizes of T(n, r), larger classes first.
inline std::vector<int> turan_class_sizes(int n, int r)
{
    detail::require_positive(n, "turan");
    if (r < 1 || r > n)
        throw GraphError("turan(n, r) needs 1 <= r <= n, got n=" + std::to_string(n) + " r=" + std::to_string(r));
    std::vector<int> sizes(static_cast<std::size_t>(r), n / r);
    for (int i = 0; i < n % r; ++i)
        ++sizes[static_cast<std::size_t>(i)];
    return sizes;
}

inline Graph turan(int n, int r) { return complete_multipartite(turan_class_sizes(n, r)); }

/// Vertices of parts[i] follow those of parts[i-1].
inline Graph disjoint_union(const std::vector<Graph>& parts)
{
    int n = 0;
    for (const auto& p : parts)
        n += p.order();
    if (n > kMaxOrder)
        throw GraphError("disjoint union exceeds 64 vertices");
    Graph g(n);
    int offset = 0;
    for (const auto& p : parts) {
        for (auto [u, v] : p.edges())
            g.add_edge(u + offset, v + offset);
        offset += p.order();
    }
    return g;
}

/// Disjoint union plus every edge between the two sides.
inline Graph join(const Graph& a, const Graph& b)
{
    Graph g = disjoint_union({a, b});
    for (int u = 0; u < a.order(); ++u)
        for (int v = 0; v < b.order(); ++v)
            g.add_edge(u, a.order() + v);
    return g;
}

/// Disjoint union of cliques of the given sizes.
inline Graph disjoint_cliques(const std::vector<int>& sizes)
{
    std::vector<Graph> parts;
    for (int s : sizes)
        parts.push_back(clique(s));
    return disjoint_union(parts);
}

} // namespace rainbow
