#include "nbrcx/complex.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_set>

#include "nbrcx/combinatorics.hpp"
#include "nbrcx/errors.hpp"

namespace nbrcx {

namespace {

const FaceList kEmptyFaces{};

// Advances a sorted k-combination of 0..n-1; false after the last one.
bool next_combination(std::vector<Vertex>& c, std::size_t n)
{
    const std::size_t k = c.size();
    for (std::size_t i = k; i-- > 0;) {
        if (c[i] < n - k + i) {
            ++c[i];
            for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
            return true;
        }
    }
    return false;
}

template <typename Fn>
void for_each_combination(std::size_t n, std::size_t k, Fn&& fn)
{
    if (k == 0 || k > n) return;
    std::vector<Vertex> c(k);
    for (std::size_t i = 0; i < k; ++i) c[i] = static_cast<Vertex>(i);
    do fn(std::span<const Vertex>(c));
    while (next_combination(c, n));
}

struct FaceHash {
    std::size_t operator()(const Face& f) const noexcept
    {
        std::size_t h = 0xcbf29ce484222325ULL;
        for (Vertex v : f) h = (h ^ v) * 0x100000001b3ULL;
        return h;
    }
};

}  // namespace

bool FaceList::contains(std::span<const Vertex> face) const noexcept
{
    if (face.size() != card_ || card_ == 0) return false;
    std::size_t lo = 0, hi = size();
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        const auto f = (*this)[mid];
        if (std::lexicographical_compare(f.begin(), f.end(), face.begin(), face.end()))
            lo = mid + 1;
        else
            hi = mid;
    }
    return lo < size() && std::equal(face.begin(), face.end(), (*this)[lo].begin());
}

SimplicialComplex::SimplicialComplex(std::size_t n_vertices, std::size_t max_card)
    : n_(n_vertices), max_card_(max_card)
{}

SimplicialComplex SimplicialComplex::from_facets(std::size_t n_vertices, std::span<const Face> facets, std::size_t max_card)
{
    std::vector<std::vector<Face>> buckets(max_card + 1);
    for (Face f : facets) {
        std::sort(f.begin(), f.end());
        f.erase(std::unique(f.begin(), f.end()), f.end());
        for (Vertex v : f)
            if (v >= n_vertices) throw ConfigError("face vertex out of range");
        const std::size_t size = f.size();
        if (size > 30) throw ConfigError("facet too large to close");
        for (std::uint64_t mask = 1; mask < (1ULL << size); ++mask) {
            const auto c = static_cast<std::size_t>(std::popcount(mask));
            if (c > max_card) continue;
            Face sub;
            sub.reserve(c);
            for (std::size_t i = 0; i < size; ++i)
                if (mask >> i & 1ULL) sub.push_back(f[i]);
            buckets[c].push_back(std::move(sub));
        }
    }
    SimplicialComplex out(n_vertices, max_card);
    for (std::size_t c = 1; c <= max_card; ++c) {
        auto& b = buckets[c];
        std::sort(b.begin(), b.end());
        b.erase(std::unique(b.begin(), b.end()), b.end());
        for (const auto& f : b) out.append(f);
    }
    return out;
}

const FaceList& SimplicialComplex::faces(std::size_t c) const noexcept
{
    return c < by_card_.size() ? by_card_[c] : kEmptyFaces;
}

std::size_t SimplicialComplex::total_faces() const noexcept
{
    std::size_t total = 0;
    for (const auto& l : by_card_) total += l.size();
    return total;
}

std::size_t SimplicialComplex::top_card() const noexcept
{
    for (std::size_t c = by_card_.size(); c-- > 1;)
        if (!by_card_[c].empty()) return c;
    return 0;
}

void SimplicialComplex::append(std::span<const Vertex> face)
{
    const std::size_t c = face.size();
    if (c == 0) return;
    while (by_card_.size() <= c) by_card_.emplace_back(by_card_.size());
    by_card_[c].push_back(face);
}

std::vector<Face> SimplicialComplex::facets() const
{
    std::vector<Face> out;
    std::unordered_set<Face, FaceHash> covered;
    for (std::size_t c = top_card(); c >= 1; --c) {
        const FaceList& list = faces(c);
        std::unordered_set<Face, FaceHash> next_covered;
        for (std::size_t i = 0; i < list.size(); ++i) {
            Face f(list[i].begin(), list[i].end());
            if (!covered.contains(f)) out.push_back(f);
            if (c > 1)
                for (std::size_t drop = 0; drop < c; ++drop) {
                    Face sub;
                    sub.reserve(c - 1);
                    for (std::size_t j = 0; j < c; ++j)
                        if (j != drop) sub.push_back(f[j]);
                    next_covered.insert(std::move(sub));
                }
        }
        covered = std::move(next_covered);
        if (c == 1) break;
    }
    return out;
}

SimplicialComplex m_neighbor_complex(const Graph& g, std::size_t m, std::size_t max_card)
{
    if (m < 1) throw ConfigError("m_neighbor_complex: m must be at least 1");
    if (max_card < 1) throw ConfigError("m_neighbor_complex: max_card must be at least 1");

    const std::size_t n = g.vertex_count();
    SimplicialComplex out(n, max_card);
    for (Vertex v = 0; v < n; ++v)
        if (g.degree(v) >= m) {
            const Vertex face[1] = {v};
            out.append(face);
        }

    Face grown;
    for (std::size_t c = 1; c < max_card; ++c) {
        const FaceList& level = out.faces(c);
        if (level.empty()) break;
        // Collect first: append() may reallocate the level being read.
        FaceList next(c + 1);
        for (std::size_t i = 0; i < level.size(); ++i) {
            const auto s = level[i];
            VertexSet cn = common_neighbors(g, s);
            if (cn.count() < m) continue;
            grown.assign(s.begin(), s.end());
            grown.push_back(0);
            for (Vertex v = s.back() + 1; v < n; ++v) {
                if (cn.and_count(g.row(v)) >= m) {
                    grown.back() = v;
                    next.push_back(grown);
                }
            }
        }
        if (next.empty()) break;
        for (std::size_t i = 0; i < next.size(); ++i) out.append(next[i]);
    }
    return out;
}

SimplicialComplex sample_linial_meshulam(std::size_t n, std::size_t k, double q, Seed seed)
{
    if (k < 1 || k > n) throw ConfigError("sample_linial_meshulam: need 1 <= k <= n");
    if (!(q >= 0.0 && q <= 1.0)) throw ConfigError("sample_linial_meshulam: q must lie in [0, 1]");

    SimplicialComplex out(n, n);
    for (std::size_t c = 1; c < k; ++c)
        for_each_combination(n, c, [&](std::span<const Vertex> f) { out.append(f); });
    Rng rng(seed);
    for_each_combination(n, k, [&](std::span<const Vertex> f) {
        if (rng.bernoulli(q)) out.append(f);
    });
    return out;
}

SupportReport support_class(const SimplicialComplex& kx, std::size_t k)
{
    if (k < 1) throw ConfigError("support_class: k must be at least 1");
    if (kx.max_card() < k + 1)
        throw ConfigError("support_class: complex built with max_card " + std::to_string(kx.max_card()) +
                          " cannot certify absence of cardinality-" + std::to_string(k + 1) + " faces");

    const std::size_t n = kx.vertex_count();
    SupportReport r;
    r.k = k;
    r.counts.assign(kx.max_card() + 1, 0);
    r.ratios.assign(kx.max_card() + 1, 0.0);
    for (std::size_t c = 1; c <= kx.max_card(); ++c) {
        r.counts[c] = kx.face_count(c);
        const double total = choose_real(n, c);
        r.ratios[c] = total > 0 ? static_cast<double>(r.counts[c]) / total : 0.0;
    }
    if (k == 1) {
        // The only 0-set is the empty set; treated as present.
        r.count_below = 1;
        r.total_below = 1;
        r.all_below = true;
    } else {
        r.count_below = r.counts[k - 1];
        r.total_below = choose_real(n, k - 1);
        r.all_below = static_cast<double>(r.count_below) == r.total_below;
    }
    r.count_above = r.counts[k + 1];
    r.none_above = r.count_above == 0;
    r.in_y = r.all_below && r.none_above;
    return r;
}

void write_complex(const SimplicialComplex& kx, std::ostream& out)
{
    out << kx.vertex_count() << ' ' << kx.max_card() << '\n';
    for (std::size_t c = 1; c <= kx.top_card(); ++c) {
        const FaceList& list = kx.faces(c);
        for (std::size_t i = 0; i < list.size(); ++i) {
            const auto f = list[i];
            for (std::size_t j = 0; j < f.size(); ++j) out << (j ? " " : "") << f[j];
            out << '\n';
        }
    }
}

SimplicialComplex read_complex(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("complex: missing header line");
    std::istringstream header(line);
    long long n = -1, cap = -1;
    if (!(header >> n >> cap) || n < 1 || cap < 1) throw ConfigError("complex: header must be \"n max_card\"");

    std::vector<Face> faces;
    while (std::getline(in, line)) {
        std::istringstream row(line);
        Face f;
        long long v;
        while (row >> v) {
            if (v < 0 || v >= n) throw ConfigError("complex: vertex out of range in \"" + line + "\"");
            f.push_back(static_cast<Vertex>(v));
        }
        if (!f.empty()) faces.push_back(std::move(f));
    }
    auto out = SimplicialComplex::from_facets(static_cast<std::size_t>(n), faces, static_cast<std::size_t>(cap));
    if (out.total_faces() != faces.size()) throw ConfigError("complex: face list is not downward closed or has duplicates");
    return out;
}

}  // namespace nbrcx
