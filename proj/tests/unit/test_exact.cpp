#include <doctest.h>

#include <bit>
#include <cmath>

#include "nbrcx/errors.hpp"
#include "nbrcx/exact.hpp"
#include "nbrcx/regime.hpp"

using namespace nbrcx;
using doctest::Approx;

namespace {

double total(const Distribution& d)
{
    long double s = 0;
    for (const auto& [_, v] : d) s += v;
    return static_cast<double>(s);
}

}  // namespace

TEST_CASE("n=3, m=1: the complete 1-complex has probability 1/8")
{
    const auto d = gamma_distribution(3, 1, 0.5);
    // all three vertices and all three pairs, no triangle
    ComplexKey full1 = 0;
    for (std::uint32_t s = 1; s < 8; ++s)
        if (std::popcount(s) <= 2) full1 |= ComplexKey{1} << s;
    double pr = 0;
    for (const auto& [key, v] : d)
        if (key == full1) pr = v;
    CHECK(pr == Approx(0.125).epsilon(1e-15));
}

TEST_CASE("n=3, m=1: no 3-vertex face ever appears")
{
    for (double p : {0.1, 0.5, 0.9})
        for (const auto& [key, _] : gamma_distribution(3, 1, p)) CHECK_FALSE(((key >> 7) & 1U) != 0);
}

TEST_CASE("distributions sum to one")
{
    for (std::size_t n = 2; n <= 5; ++n)
        for (std::size_t m = 0; m <= 2; ++m) CHECK(std::abs(total(gamma_distribution(n, m, 0.3)) - 1) <= 1e-12);
    for (std::size_t n = 2; n <= 6; ++n)
        for (std::size_t k = 1; k <= std::min<std::size_t>(n, 3); ++k) {
            const auto d = lm_distribution(n, k, 0.37);
            if (!d.empty()) CHECK(std::abs(total(d) - 1) <= 1e-12);
        }
    CHECK(lm_distribution(6, 3, 0.5).size() == (std::size_t{1} << 20));
}

TEST_CASE("exact marginals match the binomial tail")
{
    for (std::size_t n = 2; n <= 5; ++n)
        for (std::size_t m = 0; m <= 3; ++m)
            for (double p : {0.3, 0.5})
                for (std::size_t s = 1; s <= n - 1; ++s) {
                    const std::uint32_t mask = (1U << s) - 1;
                    const double exact = exact_face_probability(n, m, p, mask);
                    const double tail = binomial_tail(static_cast<long long>(n - s), std::pow(p, static_cast<double>(s)),
                                                      static_cast<long long>(m), Tail::AtLeast);
                    REQUIRE(std::abs(exact - tail) <= 1e-12);
                }
}

TEST_CASE("TV distance")
{
    const auto r = exact_small_distribution(4, 1, 0.5, 2, 0.4);
    CHECK(r.tv >= 0);
    CHECK(r.tv <= 1);
    // Both degenerate on the same complex: p = 0 gives the empty complex (m >= 1), and
    // Y with k = 1, q = 0 is the empty complex as well.
    const auto z = exact_small_distribution(4, 1, 0.0, 1, 0.0);
    CHECK(z.tv == Approx(0.0));
    // Disjoint supports give 1.
    const auto one = exact_small_distribution(4, 1, 0.0, 1, 1.0);
    CHECK(one.tv == Approx(1.0));

    // TV computed directly over the union of supports.
    const auto d = exact_small_distribution(4, 1, 0.6, 2, 0.5);
    std::map<ComplexKey, std::pair<double, double>> u;
    for (const auto& [k, v] : d.gamma) u[k].first = v;
    for (const auto& [k, v] : d.lm) u[k].second = v;
    double tv = 0;
    for (const auto& [_, pr] : u) tv += std::abs(pr.first - pr.second);
    CHECK(d.tv == Approx(tv / 2).epsilon(1e-12));

    CHECK_THROWS_AS(exact_small_distribution(7, 1, 0.5, 2, 0.5), BudgetExceeded);
}

TEST_CASE("q rules")
{
    const double n = 6, p = 0.4, beta = -std::log(n) / std::log(p);
    CHECK(resolve_q(QRule::Conj1, 6, 2, p, 2, 0) == Approx(std::pow(n, -2.0 * 2 / beta)));
    CHECK(resolve_q(QRule::Thm3, 6, 2, p, 2, 0) == Approx(std::min(1.0, std::pow(n, 2 * (1 - 2 / beta)))));
    CHECK(resolve_q(QRule::Explicit, 6, 2, p, 2, 0.3) == 0.3);
    CHECK(resolve_q(QRule::FaceProbability, 6, 2, p, 2, 0) == Approx(binomial_tail(4, 0.16, 2, Tail::AtLeast)));
    CHECK(parse_q_rule("conj1") == QRule::Conj1);
    CHECK_THROWS_AS(parse_q_rule("bogus"), ConfigError);

    const auto r = exact_small_distribution(5, 1, 0.5, 2, 0, QRule::Conj1);
    CHECK_FALSE(r.note.empty());
}

TEST_CASE("face covariance")
{
    const double q = exact_face_probability(5, 1, 0.5, 0b00011);
    const auto same = face_covariance_probe(5, 1, 0.5, 0b00011, 0b00011);
    CHECK(same.covariance == Approx(q * (1 - q)).epsilon(1e-12));

    const auto overlap = face_covariance_probe(5, 1, 0.5, 0b00011, 0b00101);
    CHECK(overlap.covariance > 0);

    // Disjoint singletons: the sign is whatever enumeration says; it is only reported.
    const auto disjoint = face_covariance_probe(5, 1, 0.5, 0b00001, 0b00010);
    CHECK(std::isfinite(disjoint.covariance));
    CHECK(disjoint.joint <= std::min(disjoint.p1, disjoint.p2));
}
