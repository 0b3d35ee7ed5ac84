#include "nbrcx/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "nbrcx/census.hpp"
#include "nbrcx/combinatorics.hpp"
#include "nbrcx/errors.hpp"
#include "nbrcx/graph.hpp"

namespace nbrcx {

const char* kind_name(ExperimentKind k)
{
    switch (k) {
    case ExperimentKind::SupportCensus: return "support_census";
    case ExperimentKind::CopyCount: return "copy_count";
    case ExperimentKind::ThresholdProbe: return "threshold_probe";
    case ExperimentKind::Theorem3Ratio: return "theorem3_ratio";
    }
    return "?";
}

ExperimentKind parse_kind(const std::string& s)
{
    for (auto k : {ExperimentKind::SupportCensus, ExperimentKind::CopyCount, ExperimentKind::ThresholdProbe, ExperimentKind::Theorem3Ratio})
        if (s == kind_name(k)) return k;
    throw ConfigError("kind: unknown experiment kind \"" + s + "\"");
}

const char* property_name(ProbeProperty p)
{
    switch (p) {
    case ProbeProperty::ContainsX: return "contains_x";
    case ProbeProperty::AllKFaces: return "all_k_faces";
    case ProbeProperty::SomeKFace: return "some_k_face";
    }
    return "?";
}

ProbeProperty parse_property(const std::string& s)
{
    for (auto p : {ProbeProperty::ContainsX, ProbeProperty::AllKFaces, ProbeProperty::SomeKFace})
        if (s == property_name(p)) return p;
    throw ConfigError("property: unknown probe property \"" + s + "\"");
}

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b)
{
    auto fam = [](const std::optional<Family>& f) {
        return f ? std::make_pair(f->p_rule, f->m_rule) : std::make_pair(std::string(), std::string());
    };
    return a.kind == b.kind && a.n == b.n && a.m == b.m && a.p == b.p && a.beta == b.beta &&
           a.family.has_value() == b.family.has_value() && fam(a.family) == fam(b.family) && a.property == b.property &&
           a.k == b.k && a.x_facets == b.x_facets && a.cap == b.cap && a.trials == b.trials && a.seed == b.seed &&
           a.output == b.output && a.threads == b.threads && a.budget == b.budget;
}

std::vector<GridPoint> expand_grid(const ExperimentConfig& cfg)
{
    std::vector<GridPoint> out;
    auto add = [&](long long n, long long m, double p, std::optional<double> beta) {
        out.push_back(GridPoint{out.size(), n, m, p, beta});
    };
    for (long long n : cfg.n) {
        if (cfg.kind == ExperimentKind::SupportCensus) {
            if (cfg.family) {
                add(n, cfg.family->m_at(static_cast<double>(n)), cfg.family->p_at(static_cast<double>(n)), std::nullopt);
            } else {
                for (long long m : cfg.m)
                    for (double p : cfg.p) add(n, m, p, std::nullopt);
            }
        } else {
            for (long long m : cfg.m)
                for (double b : cfg.beta) add(n, m, std::pow(static_cast<double>(n), -1.0 / b), b);
        }
    }
    if (out.empty()) throw ConfigError("experiment grid is empty");
    return out;
}

MeanSe mean_se(const std::vector<double>& xs)
{
    MeanSe r;
    r.count = xs.size();
    if (xs.empty()) return r;
    double s = 0;
    for (double x : xs) s += x;
    r.mean = s / static_cast<double>(xs.size());
    if (xs.size() > 1) {
        double ss = 0;
        for (double x : xs) ss += (x - r.mean) * (x - r.mean);
        r.se = std::sqrt(ss / static_cast<double>(xs.size() - 1) / static_cast<double>(xs.size()));
    }
    return r;
}

namespace {

template <typename Record>
std::vector<Record> run_grid(const ExperimentConfig& cfg, const std::vector<GridPoint>& grid,
                             const std::function<Record(const GridPoint&, std::size_t)>& trial_fn)
{
    if (cfg.trials < 1) throw ConfigError("trials must be at least 1");
    const std::size_t total = grid.size() * cfg.trials;
    return run_indexed(total, cfg.threads, [&](std::size_t i) {
        return trial_fn(grid[i / cfg.trials], i % cfg.trials);
    });
}

template <typename Record, typename Field>
std::vector<double> column(const std::vector<Record>& recs, std::size_t grid_index, Field field)
{
    std::vector<double> out;
    for (const auto& r : recs)
        if (r.grid_index == grid_index) out.push_back(static_cast<double>(field(r)));
    return out;
}

std::size_t max_facet_size(const FSet& facets)
{
    std::size_t s = 0;
    for (const auto& f : facets) s = std::max(s, f.size());
    return s;
}

}  // namespace

SupportCensusResult run_support_census(const ExperimentConfig& cfg)
{
    const auto grid = expand_grid(cfg);
    SupportCensusResult res;
    res.records = run_grid<SupportRecord>(cfg, grid, [&](const GridPoint& pt, std::size_t trial) {
        const TTau tt = compute_t_tau(static_cast<double>(pt.n), static_cast<double>(pt.m), pt.p);
        if (tt.t < 1) throw ConfigError("support census: t < 1 at n=" + std::to_string(pt.n) + ", m=" + std::to_string(pt.m));
        const auto t = static_cast<std::size_t>(tt.t);
        const std::size_t cap = cfg.cap.value_or(t + 2);
        const Graph g = sample_er(static_cast<std::size_t>(pt.n), pt.p, trial_seed(cfg, pt.index, trial));
        const SimplicialComplex kx = m_neighbor_complex(g, static_cast<std::size_t>(pt.m), cap);
        const SupportReport rep = support_class(kx, t);

        SupportRecord r;
        r.grid_index = pt.index;
        r.trial = trial;
        r.n = pt.n;
        r.m = pt.m;
        r.p = pt.p;
        r.t = tt.t;
        r.cap = cap;
        r.count_below = rep.count_below;
        r.ratio_below = static_cast<double>(rep.count_below) / rep.total_below;
        r.count_at = rep.counts[t];
        r.ratio_at = rep.ratios[t];
        r.count_above = rep.counts[t + 1];
        r.ratio_above = rep.ratios[t + 1];
        r.all_below = rep.all_below;
        r.none_above = rep.none_above;
        r.in_y = rep.in_y;
        return r;
    });

    for (const auto& pt : grid) {
        SupportSummary s;
        s.point = pt;
        s.t = compute_t_tau(static_cast<double>(pt.n), static_cast<double>(pt.m), pt.p).t;
        s.q = face_probability_q(pt.n, pt.m, pt.p);
        s.ratio_below = mean_se(column(res.records, pt.index, [](const SupportRecord& r) { return r.ratio_below; }));
        s.ratio_at = mean_se(column(res.records, pt.index, [](const SupportRecord& r) { return r.ratio_at; }));
        s.ratio_above = mean_se(column(res.records, pt.index, [](const SupportRecord& r) { return r.ratio_above; }));
        s.fraction_in_y = mean_se(column(res.records, pt.index, [](const SupportRecord& r) { return r.in_y ? 1.0 : 0.0; })).mean;
        if (s.ratio_at.se > 0) s.z_face = (s.ratio_at.mean - s.q) / s.ratio_at.se;
        res.summary.push_back(s);
    }
    return res;
}

SimplicialComplex complex_from_facets(const FSet& facets)
{
    if (facets.empty()) throw ConfigError("target complex needs at least one facet");
    std::map<std::int64_t, Vertex> relabel;
    for (const auto& f : facets)
        for (auto v : f) relabel.emplace(v, 0);
    Vertex next = 0;
    for (auto& [_, idx] : relabel) idx = next++;
    std::vector<Face> mapped;
    for (const auto& f : facets) {
        Face g;
        for (auto v : f) g.push_back(relabel[v]);
        mapped.push_back(std::move(g));
    }
    return SimplicialComplex::from_facets(relabel.size(), mapped, max_facet_size(facets));
}

CopyCountResult run_copy_count_sweep(const ExperimentConfig& cfg)
{
    const SimplicialComplex x = complex_from_facets(cfg.x_facets);
    if (x.vertex_count() > 8) throw ConfigError("copy count: target complex must have at most 8 vertices");
    const std::size_t cap = cfg.cap.value_or(x.max_card());
    const auto grid = expand_grid(cfg);

    CopyCountResult res;
    res.records = run_grid<CopyRecord>(cfg, grid, [&](const GridPoint& pt, std::size_t trial) {
        const Graph g = sample_er(static_cast<std::size_t>(pt.n), pt.p, trial_seed(cfg, pt.index, trial));
        const SimplicialComplex kx = m_neighbor_complex(g, static_cast<std::size_t>(pt.m), cap);
        CopyRecord r;
        r.grid_index = pt.index;
        r.trial = trial;
        r.n = pt.n;
        r.m = pt.m;
        r.beta = *pt.beta;
        r.p = pt.p;
        r.vertices = kx.face_count(1);
        r.copies = count_copies(kx, x);
        return r;
    });
    for (const auto& pt : grid) {
        CopySummary s;
        s.point = pt;
        s.copies = mean_se(column(res.records, pt.index, [](const CopyRecord& r) { return r.copies; }));
        s.vertices = mean_se(column(res.records, pt.index, [](const CopyRecord& r) { return r.vertices; }));
        res.summary.push_back(s);
    }
    return res;
}

std::optional<Rational> predicted_threshold(const ExperimentConfig& cfg, long long m)
{
    const auto k = static_cast<long long>(cfg.k);
    switch (*cfg.property) {
    case ProbeProperty::AllKFaces: return make_rational(k);
    case ProbeProperty::SomeKFace: return make_rational(m * k, m + k);
    case ProbeProperty::ContainsX: {
        const FShape x = shape_of(cfg.x_facets);
        const auto pred = shape_predicates(x);
        if (!pred.pure || x.phi() > kMaxEnumPhi) return std::nullopt;
        return m_density(x, m, cfg.budget);
    }
    }
    return std::nullopt;
}

ThresholdProbeResult run_threshold_probe(const ExperimentConfig& cfg)
{
    if (!cfg.property) throw ConfigError("threshold probe: property is required");
    const bool uses_x = *cfg.property == ProbeProperty::ContainsX;
    if (!uses_x && cfg.k < 1) throw ConfigError("threshold probe: k must be at least 1");
    std::optional<SimplicialComplex> x;
    if (uses_x) x = complex_from_facets(cfg.x_facets);
    const std::size_t cap = cfg.cap.value_or(uses_x ? x->max_card() : cfg.k);
    const auto grid = expand_grid(cfg);

    ThresholdProbeResult res;
    res.records = run_grid<ProbeRecord>(cfg, grid, [&](const GridPoint& pt, std::size_t trial) {
        const Graph g = sample_er(static_cast<std::size_t>(pt.n), pt.p, trial_seed(cfg, pt.index, trial));
        const SimplicialComplex kx = m_neighbor_complex(g, static_cast<std::size_t>(pt.m), cap);
        ProbeRecord r;
        r.grid_index = pt.index;
        r.trial = trial;
        r.n = pt.n;
        r.m = pt.m;
        r.beta = *pt.beta;
        r.p = pt.p;
        switch (*cfg.property) {
        case ProbeProperty::SomeKFace: r.has_property = kx.face_count(cfg.k) > 0; break;
        case ProbeProperty::AllKFaces:
            r.has_property = static_cast<double>(kx.face_count(cfg.k)) == choose_real(static_cast<std::uint64_t>(pt.n), cfg.k);
            break;
        case ProbeProperty::ContainsX: r.has_property = count_copies(kx, *x) > 0; break;
        }
        return r;
    });
    for (const auto& pt : grid) {
        res.summary.push_back({pt, mean_se(column(res.records, pt.index, [](const ProbeRecord& r) { return r.has_property ? 1.0 : 0.0; }))});
    }
    for (long long m : cfg.m) res.predicted.emplace_back(m, predicted_threshold(cfg, m));
    return res;
}

Theorem3Hypotheses theorem3_hypotheses(const FSet& x_facets, long long m, double beta)
{
    Theorem3Hypotheses h;
    const FShape x = shape_of(x_facets);
    const auto pred = shape_predicates(x);
    h.pure = pred.pure;
    h.k = pred.purity.value_or(0);
    h.x0 = x.x0();
    h.phi = static_cast<long long>(x.phi());
    h.m_large = m > h.k * h.x0 * h.phi;
    h.beta_lower = make_rational(h.k * m * h.phi, h.x0 + m * h.phi);
    h.beta_in_range = static_cast<double>(h.k) > beta && beta > to_double(h.beta_lower);
    return h;
}

double expected_copies_y(long long n, long long x0, long long phi, long long m, long long k, double beta)
{
    const double ln_q = static_cast<double>(m) * (1.0 - static_cast<double>(k) / beta) * std::log(static_cast<double>(n));
    return falling_factorial(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(x0)) * std::exp(static_cast<double>(phi) * ln_q);
}

Theorem3Result theorem3_ratio_probe(const ExperimentConfig& cfg)
{
    if (cfg.m.size() != 1 || cfg.beta.size() != 1) throw ConfigError("theorem3 probe: exactly one m and one beta");
    const long long m = cfg.m.front();
    const double beta = cfg.beta.front();
    Theorem3Result res;
    res.hypotheses = theorem3_hypotheses(cfg.x_facets, m, beta);

    ExperimentConfig copy_cfg = cfg;
    copy_cfg.kind = ExperimentKind::CopyCount;
    const SimplicialComplex x = complex_from_facets(cfg.x_facets);
    const std::size_t cap = cfg.cap.value_or(x.max_card());
    const auto grid = expand_grid(copy_cfg);
    res.records = run_grid<CopyRecord>(copy_cfg, grid, [&](const GridPoint& pt, std::size_t trial) {
        const Graph g = sample_er(static_cast<std::size_t>(pt.n), pt.p, trial_seed(cfg, pt.index, trial));
        const SimplicialComplex kx = m_neighbor_complex(g, static_cast<std::size_t>(pt.m), cap);
        CopyRecord r;
        r.grid_index = pt.index;
        r.trial = trial;
        r.n = pt.n;
        r.m = pt.m;
        r.beta = beta;
        r.p = pt.p;
        r.vertices = kx.face_count(1);
        r.copies = count_copies(kx, x);
        return r;
    });

    std::vector<double> ratios;
    for (const auto& pt : grid) {
        Theorem3Row row;
        row.n = pt.n;
        row.p = pt.p;
        row.q = std::pow(static_cast<double>(pt.n), static_cast<double>(m) * (1.0 - static_cast<double>(res.hypotheses.k) / beta));
        row.gamma_copies = mean_se(column(res.records, pt.index, [](const CopyRecord& r) { return r.copies; }));
        row.y_copies = expected_copies_y(pt.n, res.hypotheses.x0, res.hypotheses.phi, m, res.hypotheses.k, beta);
        if (row.y_copies > 0) {
            row.ratio = row.gamma_copies.mean / row.y_copies;
            ratios.push_back(*row.ratio);
        }
        res.rows.push_back(row);
    }

    std::ostringstream trend;
    if (!res.hypotheses.all()) trend << "hypotheses violated (probe ran anyway); ";
    if (ratios.size() >= 2) {
        const double first = std::fabs(std::log(std::max(ratios.front(), 1e-300)));
        const double last = std::fabs(std::log(std::max(ratios.back(), 1e-300)));
        trend << (last < first ? "ratio moves toward 1 across the n grid" : "no movement toward 1 across the n grid");
    } else {
        trend << "too few grid points for a trend";
    }
    trend << " (qualitative; the limit is not certified at this scale)";
    res.trend = trend.str();
    return res;
}

}  // namespace nbrcx
