#include "nbrcx/census.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "nbrcx/combinatorics.hpp"
#include "nbrcx/errors.hpp"

namespace nbrcx {

CensusProfile count_faces(const SimplicialComplex& kx)
{
    CensusProfile p;
    p.n = kx.vertex_count();
    p.counts.assign(kx.max_card() + 1, 0);
    p.ratios.assign(kx.max_card() + 1, 0.0);
    for (std::size_t c = 1; c <= kx.max_card(); ++c) {
        p.counts[c] = kx.face_count(c);
        const double total = choose_real(p.n, c);
        p.ratios[c] = total > 0 ? static_cast<double>(p.counts[c]) / total : 0.0;
    }
    return p;
}

namespace {

// Backtracking state for count_copies.
class CopyCounter {
public:
    CopyCounter(const SimplicialComplex& k, const SimplicialComplex& x) : k_(k)
    {
        const std::size_t nx = x.vertex_count();
        facets_ = x.facets();
        // Vertices of x that appear in no face are not part of x_0.
        std::vector<bool> used(nx, false);
        for (const auto& f : facets_)
            for (Vertex v : f) used[v] = true;

        // Facet order: most overlap with already-placed vertices first, then larger.
        std::vector<bool> placed(nx, false), facet_done(facets_.size(), false);
        for (std::size_t step = 0; step < facets_.size(); ++step) {
            std::size_t best = facets_.size();
            std::pair<std::size_t, std::size_t> best_key{0, 0};
            for (std::size_t i = 0; i < facets_.size(); ++i) {
                if (facet_done[i]) continue;
                std::size_t overlap = 0;
                for (Vertex v : facets_[i]) overlap += placed[v];
                const std::pair<std::size_t, std::size_t> key{overlap, facets_[i].size()};
                if (best == facets_.size() || key > best_key) {
                    best = i;
                    best_key = key;
                }
            }
            facet_done[best] = true;
            for (Vertex v : facets_[best])
                if (!placed[v]) {
                    placed[v] = true;
                    order_.push_back(v);
                }
        }
        position_.assign(nx, -1);
        for (std::size_t i = 0; i < order_.size(); ++i) position_[order_[i]] = static_cast<int>(i);

        // For each step, the facets containing that vertex; the placed part is checked.
        touching_.resize(order_.size());
        for (std::size_t fi = 0; fi < facets_.size(); ++fi)
            for (Vertex v : facets_[fi]) touching_[position_[v]].push_back(fi);

        image_.assign(nx, 0);
        in_use_ = VertexSet(k.vertex_count());
        vertex_faces_ = VertexSet(k.vertex_count());
        const FaceList& singles = k.faces(1);
        for (std::size_t i = 0; i < singles.size(); ++i) vertex_faces_.insert(singles[i][0]);

        // 1-skeleton rows of k for candidate pruning.
        edge_rows_.assign(k.vertex_count(), VertexSet(k.vertex_count()));
        const FaceList& edges = k.faces(2);
        for (std::size_t i = 0; i < edges.size(); ++i) {
            edge_rows_[edges[i][0]].insert(edges[i][1]);
            edge_rows_[edges[i][1]].insert(edges[i][0]);
        }
    }

    std::uint64_t run()
    {
        for (const auto& f : facets_)
            if (f.size() > k_.max_card()) return 0;
        if (order_.empty()) return 1;
        return place(0);
    }

private:
    std::uint64_t place(std::size_t step)
    {
        if (step == order_.size()) return 1;
        const Vertex xv = order_[step];

        VertexSet cand = vertex_faces_;
        cand.subtract(in_use_);
        for (std::size_t fi : touching_[step])
            for (Vertex u : facets_[fi])
                if (position_[u] < static_cast<int>(step)) cand &= edge_rows_[image_[u]];

        std::uint64_t total = 0;
        Face scratch;
        cand.for_each([&](Vertex kv) {
            image_[xv] = kv;
            for (std::size_t fi : touching_[step]) {
                scratch.clear();
                for (Vertex u : facets_[fi])
                    if (position_[u] <= static_cast<int>(step)) scratch.push_back(image_[u]);
                if (scratch.size() <= 2) continue;  // vertices and edges already enforced
                std::sort(scratch.begin(), scratch.end());
                if (!k_.contains(scratch)) return;
            }
            in_use_.insert(kv);
            total += place(step + 1);
            in_use_.erase(kv);
        });
        return total;
    }

    const SimplicialComplex& k_;
    std::vector<Face> facets_;
    std::vector<Vertex> order_;
    std::vector<int> position_;
    std::vector<std::vector<std::size_t>> touching_;
    std::vector<Vertex> image_;
    VertexSet in_use_, vertex_faces_;
    std::vector<VertexSet> edge_rows_;
};

template <typename Fn>
void for_each_dense_set(const Graph& g, std::size_t k, std::size_t m, std::vector<Vertex>& prefix, const VertexSet& cn, Fn&& fn)
{
    if (prefix.size() == k) {
        fn(cn);
        return;
    }
    const Vertex start = prefix.empty() ? 0 : prefix.back() + 1;
    for (Vertex v = start; v < g.vertex_count(); ++v) {
        VertexSet next = cn & g.row(v);
        if (next.count() < m) continue;  // supersets only lose common neighbours
        prefix.push_back(v);
        for_each_dense_set(g, k, m, prefix, next, fn);
        prefix.pop_back();
    }
}

}  // namespace

std::uint64_t count_copies(const SimplicialComplex& k, const SimplicialComplex& x)
{
    if (x.vertex_count() > 16) throw ConfigError("count_copies: target complex must have at most 16 vertices");
    return CopyCounter(k, x).run();
}

std::uint64_t count_k_set_witness_pairs(const Graph& g, std::size_t k, std::size_t m)
{
    if (k < 1) throw ConfigError("count_k_set_witness_pairs: k must be at least 1");
    std::uint64_t total = 0;
    std::vector<Vertex> prefix;
    for_each_dense_set(g, k, m, prefix, VertexSet::full(g.vertex_count()),
                       [&](const VertexSet& cn) { total += choose_exact(cn.count(), m); });
    return total;
}

std::uint64_t count_bipartite_witness_embeddings(const Graph& g, const FSet& x_facets, const FSet& witness)
{
    if (x_facets.size() != witness.size()) throw ConfigError("witness must assign one label set per facet");

    // Relabel: x labels 0..nx-1, then witness labels nx..nx+nw-1.
    std::map<std::int64_t, std::size_t> x_index, w_index;
    for (const auto& f : x_facets)
        for (auto v : f) x_index.emplace(v, 0);
    for (const auto& f : witness)
        for (auto v : f) w_index.emplace(v, 0);
    std::size_t next = 0;
    for (auto& [_, idx] : x_index) idx = next++;
    for (auto& [_, idx] : w_index) idx = next++;
    const std::size_t total = next;
    if (total > 10) throw ConfigError("count_bipartite_witness_embeddings: at most 10 labels supported");
    if (total > g.vertex_count()) return 0;

    std::vector<std::vector<bool>> must(total, std::vector<bool>(total, false));
    for (std::size_t f = 0; f < x_facets.size(); ++f)
        for (auto a : x_facets[f])
            for (auto b : witness[f]) {
                const std::size_t i = x_index[a], j = w_index[b];
                must[i][j] = must[j][i] = true;
            }

    // Most-constrained labels first.
    std::vector<std::size_t> order(total);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::count(must[a].begin(), must[a].end(), true) > std::count(must[b].begin(), must[b].end(), true);
    });

    std::vector<Vertex> image(total, 0);
    std::vector<bool> placed(total, false);
    VertexSet in_use(g.vertex_count());

    std::function<std::uint64_t(std::size_t)> place = [&](std::size_t step) -> std::uint64_t {
        if (step == total) return 1;
        const std::size_t label = order[step];
        VertexSet cand = VertexSet::full(g.vertex_count());
        cand.subtract(in_use);
        for (std::size_t other = 0; other < total; ++other)
            if (placed[other] && must[label][other]) cand &= g.row(image[other]);
        std::uint64_t count = 0;
        cand.for_each([&](Vertex v) {
            image[label] = v;
            placed[label] = true;
            in_use.insert(v);
            count += place(step + 1);
            in_use.erase(v);
            placed[label] = false;
        });
        return count;
    };
    return place(0);
}

}  // namespace nbrcx
