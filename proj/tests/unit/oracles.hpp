// Independent brute-force references shared by the unit and acceptance suites.
#ifndef NBRCX_TEST_ORACLES_HPP
#define NBRCX_TEST_ORACLES_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include "nbrcx/complex.hpp"
#include "nbrcx/graph.hpp"
#include "nbrcx/rational.hpp"
#include "nbrcx/rng.hpp"
#include "nbrcx/shape.hpp"

namespace oracle {

using nbrcx::Vertex;

inline std::vector<Vertex> naive_common_neighbors(const nbrcx::Graph& g, const std::vector<Vertex>& s)
{
    std::vector<Vertex> out;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        bool ok = std::find(s.begin(), s.end(), v) == s.end();
        for (Vertex u : s) ok = ok && g.adjacent(u, v);
        if (ok) out.push_back(v);
    }
    return out;
}

// Every vertex subset of size <= cap with at least m common neighbours, as bitmasks.
inline std::set<std::uint32_t> brute_neighbor_faces(const nbrcx::Graph& g, std::size_t m, std::size_t cap)
{
    const auto n = g.vertex_count();
    std::set<std::uint32_t> out;
    for (std::uint32_t s = 1; s < (1U << n); ++s) {
        if (static_cast<std::size_t>(__builtin_popcount(s)) > cap) continue;
        std::vector<Vertex> verts;
        for (Vertex v = 0; v < n; ++v)
            if (s >> v & 1U) verts.push_back(v);
        if (naive_common_neighbors(g, verts).size() >= m) out.insert(s);
    }
    return out;
}

inline std::set<std::uint32_t> face_masks(const nbrcx::SimplicialComplex& k)
{
    std::set<std::uint32_t> out;
    for (std::size_t c = 1; c <= k.max_card(); ++c)
        for (std::size_t i = 0; i < k.face_count(c); ++i) {
            std::uint32_t s = 0;
            for (Vertex v : k.faces(c)[i]) s |= 1U << v;
            out.insert(s);
        }
    return out;
}

inline nbrcx::Graph graph_from_mask(std::size_t n, std::uint32_t mask)
{
    nbrcx::Graph g(n);
    std::size_t bit = 0;
    for (Vertex i = 0; i < n; ++i)
        for (Vertex j = i + 1; j < n; ++j, ++bit)
            if (mask >> bit & 1U) g.add_edge(i, j);
    return g;
}

// Labeled copies by trying every injection of X's vertices.
inline std::uint64_t all_injections_copies(const nbrcx::SimplicialComplex& k, const nbrcx::SimplicialComplex& x)
{
    const std::size_t nx = x.vertex_count(), nk = k.vertex_count();
    if (nx > nk) return 0;
    std::vector<std::vector<Vertex>> xfaces;
    for (std::size_t c = 1; c <= x.max_card(); ++c)
        for (std::size_t i = 0; i < x.face_count(c); ++i) {
            auto f = x.faces(c)[i];
            xfaces.emplace_back(f.begin(), f.end());
        }
    std::vector<Vertex> img(nx);
    std::vector<bool> used(nk, false);
    std::uint64_t total = 0;
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == nx) {
            for (const auto& f : xfaces) {
                std::vector<Vertex> g;
                for (Vertex v : f) g.push_back(img[v]);
                std::sort(g.begin(), g.end());
                if (g.size() > k.max_card() || !k.contains(g)) return;
            }
            ++total;
            return;
        }
        for (Vertex v = 0; v < nk; ++v) {
            if (used[v]) continue;
            used[v] = true;
            img[i] = v;
            self(self, i + 1);
            used[v] = false;
        }
    };
    rec(rec, 0);
    return total;
}

// ---- F-sets built element by element from an exclusive-region vector.

// Each element is tagged with the facet subset (bitmask) it lies in.
inline std::vector<std::uint32_t> elements_from_excl(const std::vector<std::int64_t>& excl)
{
    std::vector<std::uint32_t> out;
    for (std::uint32_t a = 1; a < excl.size(); ++a)
        for (std::int64_t i = 0; i < excl[a]; ++i) out.push_back(a);
    return out;
}

// |union over f of Z_f x V_f|: pairs sharing at least one facet.
inline std::int64_t bipartite_edges(const std::vector<std::uint32_t>& z, const std::vector<std::uint32_t>& v)
{
    std::int64_t e = 0;
    for (auto a : z)
        for (auto b : v)
            if (a & b) ++e;
    return e;
}

// All nonnegative excl-vectors dominated by `bound` (slot 0 fixed at 0).
inline void for_each_sub_excl(const std::vector<std::int64_t>& bound,
                              const std::function<void(const std::vector<std::int64_t>&)>& fn)
{
    std::vector<std::int64_t> cur(bound.size(), 0);
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == bound.size()) {
            fn(cur);
            return;
        }
        for (std::int64_t c = 0; c <= bound[i]; ++c) {
            cur[i] = c;
            self(self, i + 1);
        }
        cur[i] = 0;
    };
    rec(rec, 1);
}

inline nbrcx::Rational brute_max_sub_density(const std::vector<std::int64_t>& x_excl,
                                             const std::vector<std::int64_t>& w_excl)
{
    nbrcx::Rational best(-1);
    for_each_sub_excl(x_excl, [&](const std::vector<std::int64_t>& z) {
        const auto ze = elements_from_excl(z);
        if (ze.empty()) return;
        for_each_sub_excl(w_excl, [&](const std::vector<std::int64_t>& v) {
            const auto ve = elements_from_excl(v);
            if (ve.empty()) return;
            const nbrcx::Rational b = nbrcx::make_rational(bipartite_edges(ze, ve),
                                                           static_cast<long long>(ze.size() + ve.size()));
            if (b > best) best = b;
        });
    });
    return best;
}

// Exclusive-region vectors whose every facet holds exactly m elements.
inline std::vector<std::vector<std::int64_t>> brute_m_pure_excl(std::size_t phi, std::int64_t m)
{
    std::vector<std::vector<std::int64_t>> out;
    const std::size_t slots = std::size_t{1} << phi;
    std::vector<std::int64_t> cur(slots, 0);
    auto rec = [&](auto&& self, std::size_t a) -> void {
        if (a == slots) {
            for (std::size_t f = 0; f < phi; ++f) {
                std::int64_t s = 0;
                for (std::size_t b = 1; b < slots; ++b)
                    if (b >> f & 1U) s += cur[b];
                if (s != m) return;
            }
            out.push_back(cur);
            return;
        }
        for (std::int64_t c = 0; c <= m; ++c) {
            cur[a] = c;
            self(self, a + 1);
        }
        cur[a] = 0;
    };
    rec(rec, 1);
    return out;
}

inline nbrcx::Rational brute_m_density(const std::vector<std::int64_t>& x_excl, std::size_t phi, std::int64_t m)
{
    std::optional<nbrcx::Rational> best;
    for (const auto& w : brute_m_pure_excl(phi, m)) {
        const auto d = brute_max_sub_density(x_excl, w);
        if (!best || d < *best) best = d;
    }
    return *best;
}

}  // namespace oracle

#endif
