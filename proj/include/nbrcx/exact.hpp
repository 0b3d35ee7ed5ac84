#ifndef NBRCX_EXACT_HPP
#define NBRCX_EXACT_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace nbrcx {

/**
 * Exact distributions on labelled complexes over n <= 6 vertices. A complex
 * is keyed by a 64-bit mask: bit S is set iff the vertex subset with bitmask
 * S (S != 0) is a face.
 */
using ComplexKey = std::uint64_t;
using Distribution = std::vector<std::pair<ComplexKey, double>>;  // sorted by key

inline constexpr std::size_t kMaxExactN = 6;

/** N_m of the graph whose edge set is the given mask over the C(n,2) pairs in lexicographic order. */
ComplexKey m_neighbor_key(std::size_t n, std::uint32_t edge_mask, std::size_t m);

/** Law of N_m(G(n, p)) by enumeration of all 2^C(n,2) graphs. */
Distribution gamma_distribution(std::size_t n, std::size_t m, double p);

/**
 * Linial-Meshulam law on Y_{n,k-1}. Materialized only when C(n,k) <= 20;
 * ly_probability() evaluates single complexes without that limit.
 */
Distribution lm_distribution(std::size_t n, std::size_t k, double q);
double lm_probability(std::size_t n, std::size_t k, double q, ComplexKey key);

enum class QRule { Explicit, FaceProbability, Conj1, Thm3 };
QRule parse_q_rule(const std::string& s);
const char* q_rule_name(QRule r);

/**
 * q from a rule. With beta = -ln n / ln p: conj1 gives n^(-k m / beta),
 * thm3 gives n^(m (1 - k / beta)), face gives P(Bin(n-k, p^k) >= m).
 */
double resolve_q(QRule rule, std::size_t n, std::size_t m, double p, std::size_t k, double explicit_q);

struct ExactComparison {
    std::size_t n = 0, m = 0, k = 0;
    double p = 0, q = 0;
    QRule rule = QRule::Explicit;
    Distribution gamma;
    Distribution lm;          // empty when C(n,k) > 20
    double tv = 0;            // (1/2) sum |P_gamma - P_lm| over all complexes
    double gamma_mass_outside_y = 0;
    std::string note;         // flags the conj1/thm3 discrepancy when relevant
};

/** Throws BudgetExceeded for n > 6. */
ExactComparison exact_small_distribution(std::size_t n, std::size_t m, double p, std::size_t k, double q,
                                         QRule rule = QRule::Explicit);

/** P(the vertex set with bitmask s is a face) under the enumerated law. */
double exact_face_probability(std::size_t n, std::size_t m, double p, std::uint32_t s);

struct CovarianceReport {
    double p1 = 0, p2 = 0, joint = 0, covariance = 0;
};
/** Exact Cov(1[f1 in K], 1[f2 in K]) for K ~ N_m(G(n, p)). */
CovarianceReport face_covariance_probe(std::size_t n, std::size_t m, double p, std::uint32_t f1, std::uint32_t f2);

}  // namespace nbrcx

#endif
