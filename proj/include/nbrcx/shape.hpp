#ifndef NBRCX_SHAPE_HPP
#define NBRCX_SHAPE_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nbrcx/rational.hpp"

namespace nbrcx {

/**
 * F-shapes over a facet set F = {0..phi-1}. Every vector is indexed by the
 * subset bitmask A (bit i set iff facet i is in A), so slot 0 is the empty
 * set and slot 2^phi - 1 is F itself.
 *
 * Three versions of the same object are kept in sync:
 *   cap[A]  size of the intersection over A (cap[0] = x_0, the ground set)
 *   excl[A] elements lying in exactly the facets of A
 *   cup[A]  size of the union over A (cup[F] = x_0)
 */
enum class Version { Cap, Excl, Cup };

using SubsetVector = std::vector<std::int64_t>;

inline constexpr std::size_t kMaxPhi = 8;
inline constexpr std::size_t kMaxEnumPhi = 4;
inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

Version parse_version(const std::string& name);
const char* version_name(Version v);

/**
 * Inclusion-exclusion conversion between versions. The six direct formulas
 * are used as stated; in particular cup -> excl sums over every B inside A,
 * the empty set included, and excl[0] is fixed at 0.
 */
SubsetVector convert_version(const SubsetVector& values, Version from, Version to, std::size_t phi);

class FShape {
public:
    FShape() = default;

    static FShape from_cap(std::size_t phi, SubsetVector cap);
    static FShape from_excl(std::size_t phi, SubsetVector excl);
    static FShape from_cup(std::size_t phi, SubsetVector cup);
    static FShape zero(std::size_t phi);

    std::size_t phi() const noexcept { return phi_; }
    std::size_t size() const noexcept { return cap_.size(); }
    std::uint32_t full_set() const noexcept { return static_cast<std::uint32_t>(cap_.size() - 1); }

    const SubsetVector& cap() const noexcept { return cap_; }
    const SubsetVector& excl() const noexcept { return excl_; }
    const SubsetVector& cup() const noexcept { return cup_; }
    const SubsetVector& version(Version v) const noexcept;

    /** Size of the ground set. */
    std::int64_t x0() const noexcept { return cap_[0]; }

    friend bool operator==(const FShape& a, const FShape& b) { return a.phi_ == b.phi_ && a.cap_ == b.cap_; }

private:
    std::size_t phi_ = 0;
    SubsetVector cap_, excl_, cup_;
};

/** One set of labels per facet; the ground set is the union. */
using FSet = std::vector<std::vector<std::int64_t>>;

/** Shape of an explicit F-set; cap[0] is the size of the union. */
FShape shape_of(const FSet& sets);

/**
 * Shape of a complex given by its facets. If vertices is nonempty it is the
 * declared vertex set, and any vertex outside every facet is rejected.
 */
FShape shape_from_facets(const FSet& facets, const std::vector<std::int64_t>& vertices = {});

/** Pointwise product of cap versions; the ground slot is recomputed as cup[F]. */
FShape cap_product(const FShape& w, const FShape& x);

/** (wx)_0: edges of the facet-wise complete bipartite witness graph. */
std::int64_t product_x0(const FShape& w, const FShape& x);

struct ShapePredicates {
    bool nonnegative = false;
    bool pure = false;                    // all singleton caps equal
    std::optional<std::int64_t> purity;   // the common singleton cap when pure
    bool k_pure = false;                  // pure with the requested k (false when none requested)
    std::int64_t x0 = 0;
    std::size_t phi = 0;
};
ShapePredicates shape_predicates(const FShape& x, std::optional<std::int64_t> k = std::nullopt);

/** z <= x iff x.excl - z.excl is componentwise nonnegative. */
bool shape_leq(const FShape& z, const FShape& x);

/** b(x, w) = (xw)_0 / (x_0 + w_0); std::domain_error when the denominator is 0. */
Rational pair_density(const FShape& x, const FShape& w);

/**
 * Every nonnegative m-pure excl-vector on phi facets, each once, in
 * lexicographic order of the non-singleton slots. Throws BudgetExceeded
 * when (m+1)^(2^phi - phi) exceeds budget, and ConfigError for phi > 4.
 */
void for_each_m_pure_shape(std::size_t phi, std::int64_t m, const std::function<void(const FShape&)>& fn,
                           std::uint64_t budget = kDefaultBudget);
std::vector<FShape> enumerate_m_pure_shapes(std::size_t phi, std::int64_t m, std::uint64_t budget = kDefaultBudget);

/**
 * max b(z, v) over nonnegative nonzero z <= x and v <= w, by exhaustive
 * enumeration of excl boxes.
 */
Rational max_sub_density(const FShape& x, const FShape& w, std::uint64_t budget = kDefaultBudget);

/** b_m(x): min over m-pure w of max_sub_density(x, w). */
Rational m_density(const FShape& x, std::int64_t m, std::uint64_t budget = kDefaultBudget);

/** The spread-out m-pure witness: singleton caps m, all larger caps 0. */
FShape r_shape(std::size_t phi, std::int64_t m);

/** k m phi / (x_0 + m phi), checked against pair_density(x, r_shape). */
Rational r_density(const FShape& x, std::int64_t m);

struct ReducedParams {
    Rational x_bar, w_bar;  // k and m
    Rational phi;
    Rational xw0;
    Rational x_w, pi_w_x, pi_x_w, phi_x, phi_w, b;
};
ReducedParams reduced_parameters(const FShape& x, const FShape& w);

struct InequalityCheck {
    bool applicable = false;  // false when a denominator vanishes
    Rational lhs, rhs;
    bool holds = false;
};

struct Conjecture2Check {
    InequalityCheck ineq3;  // x_bar < (phi_w - 1) / (pi_x_w - 1)
    InequalityCheck ineq4;  // x_bar < (1 - phi_w (pi_w_x - 1)/(phi_x - 1)) / (pi_x_w - 1)
};
Conjecture2Check conjecture2_inequalities(const ReducedParams& r);

/** {"phi": int, "cap": [...]} in subset-index order. */
std::string shape_to_json(const FShape& x);
FShape shape_from_json(const std::string& text);

}  // namespace nbrcx

#endif
