#ifndef NBRCX_REGIME_HPP
#define NBRCX_REGIME_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nbrcx/rational.hpp"

namespace nbrcx {

enum class Tail { AtLeast, AtMost };

struct TTau {
    long long t = 0;
    double tau = 0;
};

/**
 * t = nearest integer to log_p(m/n), the smaller one on a half-integer tie
 * (detected within kTieWindow); tau = t - log_p(m/n).
 */
TTau compute_t_tau(double n, double m, double p);
inline constexpr double kTieWindow = 1e-9;

/**
 * Exact binomial tail P(B >= m) or P(B <= m) for B ~ Bin(trials, prob),
 * summed in log space over the lighter side with compensated summation.
 */
double binomial_tail(long long trials, double prob, long long m, Tail direction);

/** P(Bin(n - t, p^t) >= m): marginal probability that a t-set is a face. */
double face_probability_q(long long n, long long m, double p);

/** exp(-(2/trials) (trials*prob - m)^2); BoundInapplicable on the wrong side of the mean. */
double hoeffding_bound(long long trials, double prob, double m, Tail direction);

/** exp(-delta^2 mu / 2) bounding P[S <= (1 - delta) mu]. */
double chernoff_lower_bound(double mu, double delta);

struct FaceBounds {
    double c1 = 0, bound1 = 0;  // P((t+1)-set is a face) <= bound1
    double c2 = 0, bound2 = 0;  // P((t-1)-set is not a face) <= bound2
};
FaceBounds lemma_face_bounds(long long n, long long m, double p);

/** m^2 (-ln p) / (n (ln n)^2). */
double kappa(double n, double m, double p);

/** Every derived quantity for one (n, m, p). */
struct RegimeParams {
    long long n = 0, m = 0;
    double p = 0;
    long long t = 0;
    double tau = 0;
    double q_face = 0;
    std::optional<FaceBounds> bounds;  // absent for n < 9
    double kappa = 0;
};
RegimeParams regime_params(long long n, long long m, double p);

/**
 * A parameter family n -> (p_n, m_n). Rules are parsed from strings:
 *   p: "const:<v>", "inv_lnln" (1/ln ln n), "n_pow:<b>" (n^(-1/b))
 *   m: "const:<v>", "ceil_div:<d>" (ceil(n/d)), "round_np2" (round(n p^2))
 */
struct Family {
    std::string p_rule;
    std::string m_rule;

    double p_at(double n) const;
    long long m_at(double n) const;
};
/** Throws ConfigError on a malformed rule string. */
Family parse_family(const std::string& p_rule, const std::string& m_rule);

struct ConditionRow {
    double n = 0, p = 0;
    long long m = 0;
    long long t = 0;
    double tau = 0;
    double growth = 0;  // m^2 / (n ln^2 n)
    double kappa = 0;   // (-ln p) m^2 / (n ln^2 n)
};

struct ConditionReport {
    std::vector<ConditionRow> rows;
    bool p_constant = false;
    bool p_decreasing = false;
    bool m_constant = false;
    bool cond1 = false;
    bool cond2 = false;
    bool cond3 = false;
    std::optional<double> beta;        // recovered b when p_n = n^(-1/b)
    std::vector<long long> cond3_t;    // integers t satisfying condition 3
    int which = 0;                     // first satisfied condition, 0 for none
};

/**
 * Grid diagnostics for the three sufficient conditions of support
 * concentration. Limits are judged on the finite grid: "diverging" means the
 * series strictly increases; condition 2 additionally needs the last kappa > 4.
 */
ConditionReport theorem1_condition_check(const Family& family, const std::vector<double>& n_grid);

struct CorollaryInterval {
    bool exists_interval = false;
    std::optional<std::pair<Rational, Rational>> constant_interval;
};
CorollaryInterval corollary_interval(long long k, long long m);

struct Threshold {
    std::string name;
    std::string governs;
    Rational value;
};

struct ThresholdSet {
    std::vector<Threshold> items;
    const Threshold& at(const std::string& name) const;
};

struct TwoFacetThresholds {
    long long k = 0, l = 0, m = 0;
    Rational crossover;        // l(2k - l) / (2(k - l))
    Rational pair_threshold;   // 2km / (2k + 2m - l)
    Rational all_faces;        // (k+1)m / (k+1+m)
    bool third_phenomenon = false;  // m > crossover

    /** Exponent of n in the expected count of facet pairs sharing l vertices. */
    Rational pair_exponent(const Rational& beta) const;
    ThresholdSet as_set() const;
};
TwoFacetThresholds two_facet_thresholds(long long k, long long l, long long m);

}  // namespace nbrcx

#endif
