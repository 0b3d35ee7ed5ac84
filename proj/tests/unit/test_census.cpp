#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "nbrcx/census.hpp"
#include "nbrcx/combinatorics.hpp"
#include "nbrcx/experiments.hpp"
#include "oracles.hpp"

using namespace nbrcx;

namespace {

SimplicialComplex relabeled(const SimplicialComplex& k, const std::vector<Vertex>& perm)
{
    std::vector<Face> faces;
    for (std::size_t c = 1; c <= k.max_card(); ++c)
        for (std::size_t i = 0; i < k.face_count(c); ++i) {
            Face f;
            for (Vertex v : k.faces(c)[i]) f.push_back(perm[v]);
            std::sort(f.begin(), f.end());
            faces.push_back(f);
        }
    return SimplicialComplex::from_facets(k.vertex_count(), faces, k.max_card());
}

}  // namespace

TEST_CASE("count_faces")
{
    const auto k = m_neighbor_complex(complete_graph(6), 1, 6);
    const auto prof = count_faces(k);
    CHECK(prof.n == 6);
    CHECK(prof.counts[1] == 6);
    CHECK(prof.counts[5] == 6);
    CHECK(prof.counts[6] == 0);
    CHECK(prof.ratios[3] == 1.0);
}

TEST_CASE("count_copies agrees with trying every injection")
{
    const std::vector<FSet> targets = {
        {{0}},
        {{0, 1}},
        {{0, 1}, {1, 2}},
        {{0, 1, 2}},
        {{0, 1}, {2, 3}},
        {{0, 1, 2}, {2, 3}},
        {{0, 1}, {1, 2}, {0, 2}},
    };
    for (std::uint64_t s = 0; s < 12; ++s) {
        const Graph g = sample_er(7, 0.6, Seed{s, 0});
        for (std::size_t m = 1; m <= 3; ++m) {
            const auto k = m_neighbor_complex(g, m, 4);
            for (const auto& t : targets) {
                const auto x = complex_from_facets(t);
                REQUIRE(count_copies(k, x) == oracle::all_injections_copies(k, x));
            }
        }
    }
}

TEST_CASE("count_copies is invariant under relabeling the host")
{
    const Graph g = sample_er(9, 0.6, Seed{77, 0});
    const auto k = m_neighbor_complex(g, 1, 4);
    std::vector<Vertex> perm(9);
    std::iota(perm.begin(), perm.end(), 0);
    Rng rng(Seed{78, 0});
    for (int r = 0; r < 5; ++r) {
        for (std::size_t i = 8; i > 0; --i) std::swap(perm[i], perm[static_cast<std::size_t>(rng.uniform() * static_cast<double>(i + 1))]);
        const auto k2 = relabeled(k, perm);
        for (const FSet& t : {FSet{{0, 1}, {1, 2}}, FSet{{0, 1, 2}}, FSet{{0, 1, 2}, {1, 2, 3}}})
            CHECK(count_copies(k2, complex_from_facets(t)) == count_copies(k, complex_from_facets(t)));
    }
}

TEST_CASE("copies of a single vertex or edge")
{
    const auto k = m_neighbor_complex(sample_er(30, 0.4, Seed{5, 0}), 2, 3);
    CHECK(count_copies(k, complex_from_facets({{7}})) == k.face_count(1));
    CHECK(count_copies(k, complex_from_facets({{0, 1}})) == 2 * k.face_count(2));
    CHECK(count_copies(k, complex_from_facets({{0, 1, 2}})) == 6 * k.face_count(3));
    // Faces beyond the built cap count as absent.
    CHECK(count_copies(m_neighbor_complex(complete_graph(8), 1, 2), complex_from_facets({{0, 1, 2}})) == 0);
}

TEST_CASE("witness pairs: exact on small graphs")
{
    const Graph g = complete_graph(6);
    // every 2-set has 4 common neighbours: 15 * C(4,2)
    CHECK(count_k_set_witness_pairs(g, 2, 2) == 15 * 6);
    for (std::uint64_t s = 0; s < 10; ++s) {
        const Graph h = sample_er(8, 0.5, Seed{s, 3});
        std::uint64_t expect = 0;
        for (std::uint32_t mask = 0; mask < 256; ++mask) {
            if (__builtin_popcount(mask) != 3) continue;
            std::vector<Vertex> f;
            for (Vertex v = 0; v < 8; ++v)
                if (mask >> v & 1U) f.push_back(v);
            expect += choose_exact(oracle::naive_common_neighbors(h, f).size(), 2);
        }
        CHECK(count_k_set_witness_pairs(h, 3, 2) == expect);
    }
}

TEST_CASE("witness pairs: Monte Carlo mean matches C(n,k) C(n-k,m) p^(km)")
{
    const std::size_t n = 30, k = 2, m = 2;
    const double p = 0.3;
    const int samples = 600;
    std::vector<double> xs;
    for (int i = 0; i < samples; ++i)
        xs.push_back(static_cast<double>(count_k_set_witness_pairs(sample_er(n, p, Seed{2024, static_cast<std::uint64_t>(i)}), k, m)));
    const MeanSe ms = mean_se(xs);
    const double expect = choose_real(n, k) * choose_real(n - k, m) * std::pow(p, static_cast<double>(k * m));
    CHECK(std::abs(ms.mean - expect) <= 5 * ms.se);
}

TEST_CASE("bipartite witness embeddings")
{
    // One facet {a} with one witness label: ordered adjacent pairs.
    const Graph g = cycle_graph(5);
    CHECK(count_bipartite_witness_embeddings(g, {{0}}, {{100}}) == 10);
    // Edge {a,b} with witness {w}: paths of length 2 with ordered ends.
    CHECK(count_bipartite_witness_embeddings(complete_graph(4), {{0, 1}}, {{9}}) == 4 * 3 * 2);
    CHECK(count_bipartite_witness_embeddings(g, {{0, 1}}, {{9}}) == 10);
}
