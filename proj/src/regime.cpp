#include "nbrcx/regime.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nbrcx/errors.hpp"

namespace nbrcx {

namespace {

// Neumaier-compensated accumulator.
class CompensatedSum {
public:
    void add(double x) noexcept
    {
        const double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// ln(n!) - ln(sqrt(2 pi n) (n/e)^n), Loader's Stirling remainder.
double stirlerr(double n)
{
    constexpr double S0 = 1.0 / 12, S1 = 1.0 / 360, S2 = 1.0 / 1260, S3 = 1.0 / 1680, S4 = 1.0 / 1188;
    if (n <= 15.0) {
        if (n == 0.0) return 0.0;
        return std::lgamma(n + 1.0) - (n + 0.5) * std::log(n) + n - 0.5 * std::log(2 * std::numbers::pi);
    }
    const double nn = n * n;
    if (n > 500) return (S0 - S1 / nn) / n;
    if (n > 80) return (S0 - (S1 - S2 / nn) / nn) / n;
    if (n > 35) return (S0 - (S1 - (S2 - S3 / nn) / nn) / nn) / n;
    return (S0 - (S1 - (S2 - (S3 - S4 / nn) / nn) / nn) / nn) / n;
}

// Deviance term x ln(x/np) + np - x, stable when x is close to np.
double bd0(double x, double np)
{
    if (std::fabs(x - np) < 0.1 * (x + np)) {
        double v = (x - np) / (x + np);
        double s = (x - np) * v;
        double ej = 2 * x * v;
        v *= v;
        for (int j = 1; j < 1000; ++j) {
            ej *= v;
            const double s1 = s + ej / (2 * j + 1);
            if (s1 == s) return s1;
            s = s1;
        }
    }
    return x * std::log(x / np) + np - x;
}

// P(Bin(n, p) = x) via the saddle-point expansion; relative error near 1e-15.
double binomial_pmf(double x, double n, double p)
{
    const double q = 1.0 - p;
    if (p == 0.0) return x == 0.0 ? 1.0 : 0.0;
    if (q == 0.0) return x == n ? 1.0 : 0.0;
    if (x == 0.0) {
        if (n == 0.0) return 1.0;
        const double lc = p < 0.1 ? -bd0(n, n * q) - n * p : n * std::log1p(-p);
        return std::exp(lc);
    }
    if (x == n) {
        const double lc = q < 0.1 ? -bd0(n, n * p) - n * q : n * std::log(p);
        return std::exp(lc);
    }
    const double lc = stirlerr(n) - stirlerr(x) - stirlerr(n - x) - bd0(x, n * p) - bd0(n - x, n * q);
    const double lf = std::log(2 * std::numbers::pi) + std::log(x) + std::log1p(-x / n);
    return std::exp(lc - 0.5 * lf);
}

// Sum of pmf over [lo, hi].
double pmf_range(long long lo, long long hi, long long trials, double prob)
{
    CompensatedSum s;
    for (long long k = lo; k <= hi; ++k) s.add(binomial_pmf(static_cast<double>(k), static_cast<double>(trials), prob));
    return s.value();
}

void require_valid_nmp(double n, double m, double p)
{
    if (!(m >= 1)) throw ConfigError("m must be at least 1");
    if (!(m < n)) throw ConfigError("m must be smaller than n (log ratio degenerate)");
    if (!(p > 0.0 && p < 1.0)) throw ConfigError("p must lie strictly between 0 and 1");
}

bool strictly_increasing(const std::vector<double>& v)
{
    for (std::size_t i = 1; i < v.size(); ++i)
        if (!(v[i] > v[i - 1])) return false;
    return v.size() >= 2;
}

double parse_number(const std::string& text, const std::string& rule)
{
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("malformed family rule \"" + rule + "\"");
    }
}

}  // namespace

TTau compute_t_tau(double n, double m, double p)
{
    require_valid_nmp(n, m, p);
    const double x = (std::log(n) - std::log(m)) / -std::log(p);
    const double fl = std::floor(x);
    const double frac = x - fl;
    double t = fl;
    if (std::fabs(frac - 0.5) > kTieWindow && frac > 0.5) t = fl + 1;
    return {static_cast<long long>(t), t - x};
}

double binomial_tail(long long trials, double prob, long long m, Tail direction)
{
    if (trials < 0) throw ConfigError("binomial_tail: trials must be nonnegative");
    if (!(prob >= 0.0 && prob <= 1.0)) throw ConfigError("binomial_tail: prob must lie in [0, 1]");

    const double mean = static_cast<double>(trials) * prob;
    if (direction == Tail::AtLeast) {
        if (m <= 0) return 1.0;
        if (m > trials) return 0.0;
        if (static_cast<double>(m) > mean) return std::clamp(pmf_range(m, trials, trials, prob), 0.0, 1.0);
        return std::clamp(1.0 - pmf_range(0, m - 1, trials, prob), 0.0, 1.0);
    }
    if (m < 0) return 0.0;
    if (m >= trials) return 1.0;
    if (static_cast<double>(m) < mean) return std::clamp(pmf_range(0, m, trials, prob), 0.0, 1.0);
    return std::clamp(1.0 - pmf_range(m + 1, trials, trials, prob), 0.0, 1.0);
}

double face_probability_q(long long n, long long m, double p)
{
    const TTau tt = compute_t_tau(static_cast<double>(n), static_cast<double>(m), p);
    const long long trials = std::max<long long>(0, n - tt.t);
    const double face_edge_prob = std::exp(static_cast<double>(tt.t) * std::log(p));
    return binomial_tail(trials, face_edge_prob, m, Tail::AtLeast);
}

double hoeffding_bound(long long trials, double prob, double m, Tail direction)
{
    if (trials <= 0) throw BoundInapplicable("hoeffding_bound: trials must be positive");
    const double mean = static_cast<double>(trials) * prob;
    if (direction == Tail::AtMost && !(m < mean))
        throw BoundInapplicable("hoeffding_bound: lower-tail bound needs m below the mean");
    if (direction == Tail::AtLeast && !(m > mean))
        throw BoundInapplicable("hoeffding_bound: upper-tail bound needs m above the mean");
    const double gap = mean - m;
    return std::exp(-2.0 / static_cast<double>(trials) * gap * gap);
}

double chernoff_lower_bound(double mu, double delta)
{
    if (!(mu > 0)) throw BoundInapplicable("chernoff_lower_bound: mu must be positive");
    if (!(delta > 0 && delta <= 1)) throw BoundInapplicable("chernoff_lower_bound: delta must lie in (0, 1]");
    return std::exp(-delta * delta * mu / 2.0);
}

FaceBounds lemma_face_bounds(long long n, long long m, double p)
{
    if (n < 9) throw ConfigError("lemma_face_bounds: n must be at least 9");
    require_valid_nmp(static_cast<double>(n), static_cast<double>(m), p);
    FaceBounds b;
    const double sp = std::sqrt(p);
    b.c1 = p <= 0.25 ? 0.5 : 2.0 * (1.0 - sp) * (1.0 - sp);
    b.c2 = p <= 0.25 ? 1.0 / 3.0 : (1.0 / sp - 1.0) * (1.0 / sp - 1.0) / 3.0;
    const double mm_over_n = static_cast<double>(m) * static_cast<double>(m) / static_cast<double>(n);
    b.bound1 = std::exp(-b.c1 * mm_over_n);
    b.bound2 = std::exp(-b.c2 * mm_over_n);
    return b;
}

double kappa(double n, double m, double p)
{
    if (!(p > 0 && p < 1)) throw ConfigError("kappa: p must lie strictly between 0 and 1");
    if (!(n >= 2)) throw ConfigError("kappa: n must be at least 2");
    const double ln_n = std::log(n);
    return m * m * -std::log(p) / (n * ln_n * ln_n);
}

RegimeParams regime_params(long long n, long long m, double p)
{
    RegimeParams r;
    r.n = n;
    r.m = m;
    r.p = p;
    const TTau tt = compute_t_tau(static_cast<double>(n), static_cast<double>(m), p);
    r.t = tt.t;
    r.tau = tt.tau;
    r.q_face = face_probability_q(n, m, p);
    if (n >= 9) r.bounds = lemma_face_bounds(n, m, p);
    r.kappa = kappa(static_cast<double>(n), static_cast<double>(m), p);
    return r;
}

Family parse_family(const std::string& p_rule, const std::string& m_rule)
{
    auto check = [](const std::string& rule, std::initializer_list<const char*> with_arg,
                    std::initializer_list<const char*> bare) {
        for (const char* b : bare)
            if (rule == b) return;
        for (const char* w : with_arg) {
            const std::string prefix = std::string(w) + ":";
            if (rule.rfind(prefix, 0) == 0) {
                parse_number(rule.substr(prefix.size()), rule);
                return;
            }
        }
        throw ConfigError("malformed family rule \"" + rule + "\"");
    };
    check(p_rule, {"const", "n_pow"}, {"inv_lnln"});
    check(m_rule, {"const", "ceil_div"}, {"round_np2"});
    auto arg = [](const std::string& rule, std::size_t at) { return parse_number(rule.substr(at), rule); };
    if (p_rule.rfind("const:", 0) == 0 && !(arg(p_rule, 6) > 0 && arg(p_rule, 6) < 1))
        throw ConfigError("family rule \"" + p_rule + "\": p must lie in (0,1)");
    if (p_rule.rfind("n_pow:", 0) == 0 && !(arg(p_rule, 6) > 0))
        throw ConfigError("family rule \"" + p_rule + "\": exponent must be positive");
    if (m_rule.rfind("const:", 0) == 0) {
        const double m = arg(m_rule, 6);
        if (!(m >= 1) || m != std::floor(m)) throw ConfigError("family rule \"" + m_rule + "\": m must be a positive integer");
    }
    if (m_rule.rfind("ceil_div:", 0) == 0 && !(arg(m_rule, 9) > 0))
        throw ConfigError("family rule \"" + m_rule + "\": divisor must be positive");
    return Family{p_rule, m_rule};
}

double Family::p_at(double n) const
{
    double p = 0;
    if (p_rule == "inv_lnln")
        p = 1.0 / std::log(std::log(n));
    else if (p_rule.rfind("const:", 0) == 0)
        p = parse_number(p_rule.substr(6), p_rule);
    else if (p_rule.rfind("n_pow:", 0) == 0)
        p = std::pow(n, -1.0 / parse_number(p_rule.substr(6), p_rule));
    else
        throw ConfigError("malformed family rule \"" + p_rule + "\"");
    if (!(p > 0 && p < 1)) throw ConfigError("family rule \"" + p_rule + "\" leaves (0,1) at n=" + std::to_string(n));
    return p;
}

long long Family::m_at(double n) const
{
    double m = 0;
    if (m_rule == "round_np2") {
        const double p = p_at(n);
        m = std::round(n * p * p);
    } else if (m_rule.rfind("const:", 0) == 0) {
        m = parse_number(m_rule.substr(6), m_rule);
    } else if (m_rule.rfind("ceil_div:", 0) == 0) {
        m = std::ceil(n / parse_number(m_rule.substr(9), m_rule));
    } else {
        throw ConfigError("malformed family rule \"" + m_rule + "\"");
    }
    if (!(m >= 1) || m != std::floor(m)) throw ConfigError("family rule \"" + m_rule + "\" gives invalid m at n=" + std::to_string(n));
    return static_cast<long long>(m);
}

ConditionReport theorem1_condition_check(const Family& family, const std::vector<double>& n_grid)
{
    if (n_grid.empty()) throw ConfigError("theorem1_condition_check: empty n grid");
    ConditionReport rep;
    std::vector<double> ps, growth, kap, betas;
    std::vector<long long> ms;
    for (double n : n_grid) {
        ConditionRow row;
        row.n = n;
        row.p = family.p_at(n);
        row.m = family.m_at(n);
        const TTau tt = compute_t_tau(n, static_cast<double>(row.m), row.p);
        row.t = tt.t;
        row.tau = tt.tau;
        const double ln_n = std::log(n);
        row.growth = static_cast<double>(row.m) * static_cast<double>(row.m) / (n * ln_n * ln_n);
        row.kappa = row.growth * -std::log(row.p);
        rep.rows.push_back(row);
        ps.push_back(row.p);
        ms.push_back(row.m);
        growth.push_back(row.growth);
        kap.push_back(row.kappa);
        betas.push_back(-ln_n / std::log(row.p));
    }

    auto all_close = [](const std::vector<double>& v) {
        for (double x : v)
            if (std::fabs(x - v.front()) > 1e-9 * std::fabs(v.front())) return false;
        return true;
    };
    rep.p_constant = all_close(ps);
    rep.p_decreasing = strictly_increasing(std::vector<double>(ps.rbegin(), ps.rend()));
    rep.m_constant = std::all_of(ms.begin(), ms.end(), [&](long long m) { return m == ms.front(); });

    rep.cond1 = rep.p_constant && strictly_increasing(growth);
    rep.cond2 = rep.p_decreasing && strictly_increasing(kap) && kap.back() > 4.0;
    if (rep.m_constant && all_close(betas)) {
        const double b = betas.front();
        const auto m = static_cast<double>(ms.front());
        rep.beta = b;
        for (long long t = 1; static_cast<double>(t * t) < 2 * m + 1; ++t) {
            const double td = static_cast<double>(t);
            if (td - 1 < b && b < m * (td + 1) / (m + td + 1)) rep.cond3_t.push_back(t);
        }
        rep.cond3 = !rep.cond3_t.empty();
    }
    rep.which = rep.cond1 ? 1 : rep.cond2 ? 2 : rep.cond3 ? 3 : 0;
    return rep;
}

CorollaryInterval corollary_interval(long long k, long long m)
{
    if (k < 1 || m < 1) throw ConfigError("corollary_interval: k and m must be positive");
    CorollaryInterval out;
    out.exists_interval = k * k < 2 * m + 1;
    if (k * k + k < m) {
        const Rational lo = std::max(make_rational(k), make_rational(m * k, m + k));
        const Rational hi = std::min(make_rational(k + 1), make_rational(m * k + m, m + k + 1));
        if (lo < hi) out.constant_interval = std::make_pair(lo, hi);
    }
    return out;
}

const Threshold& ThresholdSet::at(const std::string& name) const
{
    for (const auto& t : items)
        if (t.name == name) return t;
    throw std::out_of_range("no threshold named " + name);
}

Rational TwoFacetThresholds::pair_exponent(const Rational& beta) const
{
    return make_rational(2 * k + 2 * m - l) - make_rational(2 * k * m) / beta;
}

ThresholdSet TwoFacetThresholds::as_set() const
{
    return ThresholdSet{{
        {"crossover_m", "m above this admits the third phenomenon", crossover},
        {"pair", "facet pairs sharing l vertices appear", pair_threshold},
        {"all_faces", "all k-sets present and no (k+1)-faces", all_faces},
    }};
}

TwoFacetThresholds two_facet_thresholds(long long k, long long l, long long m)
{
    if (l < 1 || l >= k) throw ConfigError("two_facet_thresholds: need 1 <= l < k");
    if (m < 1) throw ConfigError("two_facet_thresholds: m must be positive");
    TwoFacetThresholds r;
    r.k = k;
    r.l = l;
    r.m = m;
    r.crossover = make_rational(l * (2 * k - l), 2 * (k - l));
    r.pair_threshold = make_rational(2 * k * m, 2 * k + 2 * m - l);
    r.all_faces = make_rational((k + 1) * m, k + 1 + m);
    r.third_phenomenon = make_rational(m) > r.crossover;
    return r;
}

}  // namespace nbrcx
