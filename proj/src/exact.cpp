#include "nbrcx/exact.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>

#include "nbrcx/combinatorics.hpp"
#include "nbrcx/errors.hpp"
#include "nbrcx/regime.hpp"

namespace nbrcx {

namespace {

void require_small(std::size_t n)
{
    if (n < 1) throw ConfigError("exact enumeration: n must be at least 1");
    if (n > kMaxExactN)
        throw BudgetExceeded("exact enumeration: 2^C(" + std::to_string(n) + ",2) graphs exceed the budget (n <= 6)",
                             std::ldexp(1.0, static_cast<int>(n * (n - 1) / 2)));
}

// Calls fn(edge_mask, probability) for every graph on n vertices.
template <typename Fn>
void for_each_graph(std::size_t n, double p, Fn&& fn)
{
    const std::size_t pairs = n * (n - 1) / 2;
    std::vector<double> weight(pairs + 1);
    for (std::size_t e = 0; e <= pairs; ++e)
        weight[e] = std::pow(p, static_cast<double>(e)) * std::pow(1.0 - p, static_cast<double>(pairs - e));
    for (std::uint32_t mask = 0; mask < (1U << pairs); ++mask) fn(mask, weight[static_cast<std::size_t>(std::popcount(mask))]);
}

}  // namespace

ComplexKey m_neighbor_key(std::size_t n, std::uint32_t edge_mask, std::size_t m)
{
    std::uint32_t adj[kMaxExactN] = {};
    std::size_t bit = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j, ++bit)
            if (edge_mask >> bit & 1U) {
                adj[i] |= 1U << j;
                adj[j] |= 1U << i;
            }
    const std::uint32_t all = (1U << n) - 1;
    ComplexKey key = 0;
    for (std::uint32_t s = 1; s <= all; ++s) {
        std::uint32_t common = all;
        for (std::size_t v = 0; v < n; ++v)
            if (s >> v & 1U) common &= adj[v];
        if (static_cast<std::size_t>(std::popcount(common)) >= m) key |= ComplexKey{1} << s;
    }
    return key;
}

Distribution gamma_distribution(std::size_t n, std::size_t m, double p)
{
    require_small(n);
    if (!(p >= 0 && p <= 1)) throw ConfigError("p must lie in [0, 1]");
    std::map<ComplexKey, double> acc;
    for_each_graph(n, p, [&](std::uint32_t mask, double w) {
        if (w > 0) acc[m_neighbor_key(n, mask, m)] += w;
    });
    return {acc.begin(), acc.end()};
}

double lm_probability(std::size_t n, std::size_t k, double q, ComplexKey key)
{
    const std::uint32_t all = (1U << n) - 1;
    std::size_t present = 0, total = 0;
    for (std::uint32_t s = 1; s <= all; ++s) {
        const auto c = static_cast<std::size_t>(std::popcount(s));
        const bool face = key >> s & 1U;
        if (c < k && !face) return 0.0;
        if (c > k && face) return 0.0;
        if (c == k) {
            ++total;
            present += face;
        }
    }
    return std::pow(q, static_cast<double>(present)) * std::pow(1.0 - q, static_cast<double>(total - present));
}

Distribution lm_distribution(std::size_t n, std::size_t k, double q)
{
    require_small(n);
    if (k < 1 || k > n) throw ConfigError("lm_distribution: need 1 <= k <= n");
    std::vector<std::uint32_t> below, level;
    for (std::uint32_t s = 1; s < (1U << n); ++s) {
        const auto c = static_cast<std::size_t>(std::popcount(s));
        if (c < k) below.push_back(s);
        if (c == k) level.push_back(s);
    }
    if (level.size() > 20) return {};
    ComplexKey base = 0;
    for (auto s : below) base |= ComplexKey{1} << s;
    Distribution out;
    out.reserve(std::size_t{1} << level.size());
    for (std::uint32_t pick = 0; pick < (1U << level.size()); ++pick) {
        ComplexKey key = base;
        for (std::size_t i = 0; i < level.size(); ++i)
            if (pick >> i & 1U) key |= ComplexKey{1} << level[i];
        const auto j = static_cast<double>(std::popcount(pick));
        const double pr = std::pow(q, j) * std::pow(1.0 - q, static_cast<double>(level.size()) - j);
        if (pr > 0) out.emplace_back(key, pr);
    }
    std::sort(out.begin(), out.end());
    return out;
}

QRule parse_q_rule(const std::string& s)
{
    for (auto r : {QRule::Explicit, QRule::FaceProbability, QRule::Conj1, QRule::Thm3})
        if (s == q_rule_name(r)) return r;
    throw ConfigError("unknown q rule \"" + s + "\" (explicit, face, conj1, thm3)");
}

const char* q_rule_name(QRule r)
{
    switch (r) {
    case QRule::Explicit: return "explicit";
    case QRule::FaceProbability: return "face";
    case QRule::Conj1: return "conj1";
    case QRule::Thm3: return "thm3";
    }
    return "?";
}

double resolve_q(QRule rule, std::size_t n, std::size_t m, double p, std::size_t k, double explicit_q)
{
    const auto nd = static_cast<double>(n), md = static_cast<double>(m), kd = static_cast<double>(k);
    switch (rule) {
    case QRule::Explicit: return explicit_q;
    case QRule::FaceProbability:
        return binomial_tail(static_cast<long long>(n - k), std::pow(p, kd), static_cast<long long>(m), Tail::AtLeast);
    case QRule::Conj1:
    case QRule::Thm3: {
        if (!(p > 0 && p < 1) || n < 2) throw ConfigError("q rule needs 0 < p < 1 and n >= 2");
        const double beta = -std::log(nd) / std::log(p);
        const double expo = rule == QRule::Conj1 ? -kd * md / beta : md * (1.0 - kd / beta);
        return std::min(1.0, std::pow(nd, expo));
    }
    }
    return explicit_q;
}

ExactComparison exact_small_distribution(std::size_t n, std::size_t m, double p, std::size_t k, double q, QRule rule)
{
    require_small(n);
    ExactComparison out;
    out.n = n;
    out.m = m;
    out.k = k;
    out.p = p;
    out.rule = rule;
    out.q = resolve_q(rule, n, m, p, k, q);
    if (!(out.q >= 0 && out.q <= 1)) throw ConfigError("q must lie in [0, 1]");
    if (rule == QRule::Conj1 || rule == QRule::Thm3)
        out.note = std::string("q from rule ") + q_rule_name(rule) +
                   "; the conj1 (n^(-km/beta)) and thm3 (n^(m(1-k/beta))) rules disagree, compare both";

    out.gamma = gamma_distribution(n, m, p);
    out.lm = lm_distribution(n, k, out.q);

    // Complexes outside supp(gamma) contribute their LM mass once.
    double abs_diff = 0, lm_on_gamma = 0;
    for (const auto& [key, pg] : out.gamma) {
        const double py = lm_probability(n, k, out.q, key);
        abs_diff += std::fabs(pg - py);
        lm_on_gamma += py;
        if (py == 0) out.gamma_mass_outside_y += pg;
    }
    out.tv = 0.5 * (abs_diff + std::max(0.0, 1.0 - lm_on_gamma));
    out.tv = std::clamp(out.tv, 0.0, 1.0);
    return out;
}

double exact_face_probability(std::size_t n, std::size_t m, double p, std::uint32_t s)
{
    require_small(n);
    if (s == 0 || s >= (1U << n)) throw ConfigError("face mask out of range");
    double acc = 0, comp = 0;
    for_each_graph(n, p, [&](std::uint32_t mask, double w) {
        if (m_neighbor_key(n, mask, m) >> s & 1U) {
            const double t = acc + w;
            comp += std::fabs(acc) >= std::fabs(w) ? (acc - t) + w : (w - t) + acc;
            acc = t;
        }
    });
    return acc + comp;
}

CovarianceReport face_covariance_probe(std::size_t n, std::size_t m, double p, std::uint32_t f1, std::uint32_t f2)
{
    require_small(n);
    const std::uint32_t all = (1U << n) - 1;
    if (f1 == 0 || f2 == 0 || f1 > all || f2 > all) throw ConfigError("face mask out of range");
    CovarianceReport r;
    for_each_graph(n, p, [&](std::uint32_t mask, double w) {
        const ComplexKey key = m_neighbor_key(n, mask, m);
        const bool a = key >> f1 & 1U, b = key >> f2 & 1U;
        if (a) r.p1 += w;
        if (b) r.p2 += w;
        if (a && b) r.joint += w;
    });
    r.covariance = r.joint - r.p1 * r.p2;
    return r;
}

}  // namespace nbrcx
