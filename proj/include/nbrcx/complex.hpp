#ifndef NBRCX_COMPLEX_HPP
#define NBRCX_COMPLEX_HPP

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "nbrcx/graph.hpp"
#include "nbrcx/rng.hpp"

namespace nbrcx {

using Face = std::vector<Vertex>;

/**
 * All faces of one cardinality, stored flat and in lexicographic order.
 */
class FaceList {
public:
    FaceList() = default;
    explicit FaceList(std::size_t cardinality) : card_(cardinality) {}

    std::size_t cardinality() const noexcept { return card_; }
    std::size_t size() const noexcept { return card_ == 0 ? 0 : data_.size() / card_; }
    bool empty() const noexcept { return data_.empty(); }

    std::span<const Vertex> operator[](std::size_t i) const noexcept
    {
        return {data_.data() + i * card_, card_};
    }

    /** Binary search; face must be sorted and of matching cardinality. */
    bool contains(std::span<const Vertex> face) const noexcept;

    /** Appends a sorted face; callers keep lexicographic order. */
    void push_back(std::span<const Vertex> face) { data_.insert(data_.end(), face.begin(), face.end()); }

    friend bool operator==(const FaceList&, const FaceList&) = default;

private:
    std::size_t card_ = 0;
    std::vector<Vertex> data_;
};

/**
 * Downward-closed family of vertex sets on 0..n-1, grouped by cardinality.
 * Faces with more than max_card() vertices were never examined, so their
 * absence says nothing. Immutable after construction.
 */
class SimplicialComplex {
public:
    SimplicialComplex() = default;
    SimplicialComplex(std::size_t n_vertices, std::size_t max_card);

    /** Closure of the given faces up to max_card (larger faces are dropped). */
    static SimplicialComplex from_facets(std::size_t n_vertices, std::span<const Face> facets, std::size_t max_card);

    std::size_t vertex_count() const noexcept { return n_; }
    std::size_t max_card() const noexcept { return max_card_; }

    /** Faces of cardinality c (empty list beyond the stored range). */
    const FaceList& faces(std::size_t c) const noexcept;
    std::size_t face_count(std::size_t c) const noexcept { return faces(c).size(); }
    std::size_t total_faces() const noexcept;

    /** Largest cardinality with at least one face, 0 when empty. */
    std::size_t top_card() const noexcept;

    bool contains(std::span<const Vertex> sorted_face) const noexcept
    {
        return sorted_face.size() >= 1 && faces(sorted_face.size()).contains(sorted_face);
    }

    /** Maximal faces, lexicographic within decreasing cardinality. */
    std::vector<Face> facets() const;

    /** Appends a face of cardinality c in lexicographic order. */
    void append(std::span<const Vertex> face);

    friend bool operator==(const SimplicialComplex&, const SimplicialComplex&) = default;

private:
    std::size_t n_ = 0;
    std::size_t max_card_ = 0;
    std::vector<FaceList> by_card_;  // index c holds cardinality-c faces; index 0 unused
};

/**
 * N_m(g) up to cardinality max_card: vertex sets with at least m common
 * neighbours. Built by extending each c-face with larger vertices, which is
 * complete because common-neighbour counts only shrink as a set grows.
 */
SimplicialComplex m_neighbor_complex(const Graph& g, std::size_t m, std::size_t max_card);

/**
 * Linial-Meshulam sample: every set of cardinality below k, and each k-set
 * independently with probability q (one draw per k-set in lexicographic
 * order). Nothing larger, so max_card() is reported as n.
 */
SimplicialComplex sample_linial_meshulam(std::size_t n, std::size_t k, double q, Seed seed);

struct SupportReport {
    std::size_t k = 0;
    std::size_t count_below = 0;  // faces of cardinality k-1
    double total_below = 0;       // C(n, k-1)
    bool all_below = false;       // (i)
    std::size_t count_above = 0;  // faces of cardinality k+1
    bool none_above = false;      // (ii)
    bool in_y = false;            // (i) and (ii)
    std::vector<std::size_t> counts;  // counts[c] for c = 0..max_card, counts[0] = 0
    std::vector<double> ratios;       // counts[c] / C(n, c)
};

/**
 * Membership of kx in Y_{n,k-1}. Throws ConfigError if kx was built with
 * max_card < k+1, since absence of (k+1)-faces could not be certified.
 */
SupportReport support_class(const SimplicialComplex& kx, std::size_t k);

/** Text dump: header "n max_card", then one face per line grouped by cardinality. */
void write_complex(const SimplicialComplex& kx, std::ostream& out);
SimplicialComplex read_complex(std::istream& in);

}  // namespace nbrcx

#endif
