#ifndef NBRCX_CENSUS_HPP
#define NBRCX_CENSUS_HPP

#include <cstdint>
#include <vector>

#include "nbrcx/complex.hpp"
#include "nbrcx/graph.hpp"
#include "nbrcx/shape.hpp"

namespace nbrcx {

struct CensusProfile {
    std::size_t n = 0;
    std::vector<std::uint64_t> counts;  // counts[c], c = 0..max_card; counts[0] = 0
    std::vector<double> ratios;         // counts[c] / C(n, c)
};

CensusProfile count_faces(const SimplicialComplex& kx);

/**
 * Labeled copies of x in k: injective maps from x's vertices into k's
 * vertices sending every face of x to a face of k. Automorphisms are not
 * divided out. Faces of x larger than k.max_card() count as absent.
 * x must have at most 16 vertices.
 */
std::uint64_t count_copies(const SimplicialComplex& k, const SimplicialComplex& x);

/** Sum over k-sets f of C(|common_neighbors(g, f)|, m). */
std::uint64_t count_k_set_witness_pairs(const Graph& g, std::size_t k, std::size_t m);

/**
 * Injective maps of X_0 union W_0 into g such that for every facet f, each
 * image of a vertex of f is adjacent to each image of a witness label of f.
 * Facet and witness labels live in separate namespaces.
 */
std::uint64_t count_bipartite_witness_embeddings(const Graph& g, const FSet& x_facets, const FSet& witness);

}  // namespace nbrcx

#endif
