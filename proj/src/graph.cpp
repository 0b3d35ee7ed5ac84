#include "nbrcx/graph.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "nbrcx/errors.hpp"

namespace nbrcx {

Graph::Graph(std::size_t n) : rows_(n, VertexSet(n)) {}

std::size_t Graph::edge_count() const noexcept
{
    std::size_t twice = 0;
    for (const auto& r : rows_) twice += r.count();
    return twice / 2;
}

void Graph::add_edge(Vertex u, Vertex v)
{
    if (u >= rows_.size() || v >= rows_.size())
        throw std::out_of_range("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("loops are not allowed");
    rows_[u].insert(v);
    rows_[v].insert(u);
}

Graph sample_er(std::size_t n, double p, Seed seed)
{
    if (n == 0) throw ConfigError("sample_er: n must be at least 1");
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("sample_er: p must lie in [0, 1]");

    Graph g(n);
    Rng rng(seed);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (rng.bernoulli(p)) g.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(j));
    return g;
}

VertexSet common_neighbors(const Graph& g, const VertexSet& s)
{
    VertexSet out = VertexSet::full(g.vertex_count());
    s.for_each([&](Vertex v) { out &= g.row(v); });
    // With no loops, a vertex adjacent to all of a nonempty s is outside s.
    return out;
}

VertexSet common_neighbors(const Graph& g, std::span<const Vertex> s)
{
    for (Vertex v : s)
        if (v >= g.vertex_count()) throw std::out_of_range("vertex out of range");
    return common_neighbors(g, VertexSet::from_list(g.vertex_count(), s));
}

void write_edge_list(const Graph& g, std::ostream& out)
{
    out << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (Vertex u = 0; u < g.vertex_count(); ++u)
        g.row(u).for_each([&](Vertex v) {
            if (u < v) out << u << ' ' << v << '\n';
        });
}

Graph read_edge_list(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("edge list: missing header line");
    std::istringstream header(line);
    long long n = -1, m = -1;
    if (!(header >> n >> m) || n < 1 || m < 0) throw ConfigError("edge list: header must be \"n m\"");

    Graph g(static_cast<std::size_t>(n));
    long long seen = 0;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream row(line);
        long long u = -1, v = -1;
        if (!(row >> u >> v) || u < 0 || v < 0 || u >= n || v >= n || u == v)
            throw ConfigError("edge list: bad edge line \"" + line + "\"");
        g.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
        ++seen;
    }
    if (seen != m) throw ConfigError("edge list: header announces " + std::to_string(m) + " edges, found " + std::to_string(seen));
    return g;
}

Graph complete_graph(std::size_t n)
{
    Graph g(n);
    for (Vertex i = 0; i < n; ++i)
        for (Vertex j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

Graph cycle_graph(std::size_t n)
{
    Graph g(n);
    for (Vertex i = 0; i < n; ++i) g.add_edge(i, static_cast<Vertex>((i + 1) % n));
    return g;
}

Graph complete_bipartite_graph(std::size_t a, std::size_t b)
{
    Graph g(a + b);
    for (Vertex i = 0; i < a; ++i)
        for (Vertex j = 0; j < b; ++j) g.add_edge(i, static_cast<Vertex>(a + j));
    return g;
}

}  // namespace nbrcx
