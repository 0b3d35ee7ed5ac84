#ifndef NBRCX_GRAPH_HPP
#define NBRCX_GRAPH_HPP

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "nbrcx/rng.hpp"
#include "nbrcx/vertex_set.hpp"

namespace nbrcx {

/**
 * Simple undirected graph on vertices 0..n-1 stored as n adjacency bitrows.
 * Immutable once built; safe to share across worker threads.
 */
class Graph {
public:
    Graph() = default;
    explicit Graph(std::size_t n);

    std::size_t vertex_count() const noexcept { return rows_.size(); }
    std::size_t edge_count() const noexcept;
    std::size_t degree(Vertex v) const noexcept { return rows_[v].count(); }
    bool adjacent(Vertex u, Vertex v) const noexcept { return rows_[u].contains(v); }
    const VertexSet& row(Vertex v) const noexcept { return rows_[v]; }

    /** Adds edge {u, v}; loops are rejected with std::invalid_argument. */
    void add_edge(Vertex u, Vertex v);

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    std::vector<VertexSet> rows_;
};

/**
 * Samples G(n, p). Pairs (i, j), i < j, are visited in lexicographic order
 * with one RNG draw each, so the result depends only on (n, p, seed).
 */
Graph sample_er(std::size_t n, double p, Seed seed);

/**
 * Vertices outside s adjacent to every member of s. The empty set yields
 * every vertex.
 */
VertexSet common_neighbors(const Graph& g, const VertexSet& s);
VertexSet common_neighbors(const Graph& g, std::span<const Vertex> s);

/** Edge-list text: "n m" then one "u v" line per edge, 0-indexed, u < v. */
void write_edge_list(const Graph& g, std::ostream& out);
Graph read_edge_list(std::istream& in);

// Small named graphs used by tests and examples.
Graph complete_graph(std::size_t n);
Graph cycle_graph(std::size_t n);
Graph complete_bipartite_graph(std::size_t a, std::size_t b);

}  // namespace nbrcx

#endif
