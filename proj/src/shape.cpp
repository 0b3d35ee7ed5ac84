#include "nbrcx/shape.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "nbrcx/errors.hpp"

namespace nbrcx {

namespace {

int sign_of_parity(int k) { return (k & 1) ? -1 : 1; }
int card(std::uint32_t mask) { return std::popcount(mask); }

void require_length(const SubsetVector& v, std::size_t phi)
{
    if (phi > kMaxPhi) throw ConfigError("shape: phi above " + std::to_string(kMaxPhi) + " is not supported");
    if (v.size() != (std::size_t{1} << phi))
        throw ConfigError("shape: vector length " + std::to_string(v.size()) + " does not match 2^phi for phi=" + std::to_string(phi));
}

// cap[A] = sum over supersets B of A of excl[B].
SubsetVector superset_sums(SubsetVector v, std::size_t phi)
{
    for (std::size_t i = 0; i < phi; ++i)
        for (std::size_t a = 0; a < v.size(); ++a)
            if (!(a >> i & 1U)) v[a] += v[a | (std::size_t{1} << i)];
    return v;
}

std::int64_t union_from_caps(const SubsetVector& cap)
{
    std::int64_t s = 0;
    for (std::uint32_t b = 1; b < cap.size(); ++b) s += (card(b) & 1 ? 1 : -1) * cap[b];
    return s;
}

// Odometer over the box 0 <= e[A] <= hi[A]; calls fn for every point.
template <typename Fn>
void for_each_in_box(const SubsetVector& hi, Fn&& fn)
{
    SubsetVector cur(hi.size(), 0);
    while (true) {
        fn(cur);
        std::size_t i = 0;
        while (i < cur.size()) {
            if (cur[i] < hi[i]) {
                ++cur[i];
                break;
            }
            cur[i] = 0;
            ++i;
        }
        if (i == cur.size()) return;
    }
}

double box_volume(const SubsetVector& hi)
{
    double vol = 1;
    for (auto h : hi) vol *= static_cast<double>(h + 1);
    return vol;
}

struct SubShape {
    SubsetVector cap;
    std::int64_t x0;
};

std::vector<SubShape> nonzero_subshapes(const FShape& x)
{
    std::vector<SubShape> out;
    for_each_in_box(x.excl(), [&](const SubsetVector& e) {
        SubsetVector cap = superset_sums(e, x.phi());
        if (cap[0] > 0) out.push_back({std::move(cap), 0});
    });
    for (auto& s : out) s.x0 = s.cap[0];
    return out;
}

}  // namespace

Version parse_version(const std::string& name)
{
    if (name == "cap") return Version::Cap;
    if (name == "excl") return Version::Excl;
    if (name == "cup") return Version::Cup;
    throw ConfigError("unknown shape version \"" + name + "\" (expected cap, excl or cup)");
}

const char* version_name(Version v)
{
    switch (v) {
    case Version::Cap: return "cap";
    case Version::Excl: return "excl";
    case Version::Cup: return "cup";
    }
    return "?";
}

SubsetVector convert_version(const SubsetVector& values, Version from, Version to, std::size_t phi)
{
    require_length(values, phi);
    if (from == to) return values;

    const auto size = static_cast<std::uint32_t>(values.size());
    const std::uint32_t full = size - 1;
    SubsetVector out(size, 0);

    for (std::uint32_t a = 0; a < size; ++a) {
        std::int64_t s = 0;
        if (from == Version::Cap && to == Version::Cup) {
            // (a)
            for (std::uint32_t b = a; b; b = (b - 1) & a) s += sign_of_parity(card(b) - 1) * values[b];
        } else if (from == Version::Cap && to == Version::Excl) {
            // (b)
            for (std::uint32_t b = 0; b < size; ++b)
                if ((b & a) == a) s += sign_of_parity(card(b) - card(a)) * values[b];
        } else if (from == Version::Excl && to == Version::Cup) {
            // (c)
            for (std::uint32_t b = 0; b < size; ++b)
                if (b & a) s += values[b];
        } else if (from == Version::Excl && to == Version::Cap) {
            // (d)
            for (std::uint32_t b = 0; b < size; ++b)
                if ((b & a) == a) s += values[b];
        } else if (from == Version::Cup && to == Version::Cap) {
            // (e)
            if (a == 0) {
                s = values[full];
            } else {
                for (std::uint32_t b = a;; b = (b - 1) & a) {
                    s += sign_of_parity(card(b) - 1) * values[b];
                    if (b == 0) break;
                }
            }
        } else {
            // (f), B over every subset of A including the empty set
            if (a != 0)
                for (std::uint32_t b = a;; b = (b - 1) & a) {
                    s += sign_of_parity(card(a) - card(b) + 1) * values[full & ~b];
                    if (b == 0) break;
                }
        }
        out[a] = s;
    }
    return out;
}

FShape FShape::from_cap(std::size_t phi, SubsetVector cap)
{
    require_length(cap, phi);
    FShape s;
    s.phi_ = phi;
    s.excl_ = convert_version(cap, Version::Cap, Version::Excl, phi);
    s.cup_ = convert_version(cap, Version::Cap, Version::Cup, phi);
    if (s.excl_[0] != 0)
        throw ConfigError("shape: cap[empty] = " + std::to_string(cap[0]) + " differs from the union size " + std::to_string(s.cup_.back()));
    s.cap_ = std::move(cap);
    return s;
}

FShape FShape::from_excl(std::size_t phi, SubsetVector excl)
{
    require_length(excl, phi);
    if (excl[0] != 0) throw ConfigError("shape: excl[empty] must be 0");
    FShape s;
    s.phi_ = phi;
    s.cap_ = convert_version(excl, Version::Excl, Version::Cap, phi);
    s.cup_ = convert_version(excl, Version::Excl, Version::Cup, phi);
    s.excl_ = std::move(excl);
    return s;
}

FShape FShape::from_cup(std::size_t phi, SubsetVector cup)
{
    require_length(cup, phi);
    if (cup[0] != 0) throw ConfigError("shape: cup[empty] must be 0");
    FShape s;
    s.phi_ = phi;
    s.cap_ = convert_version(cup, Version::Cup, Version::Cap, phi);
    s.excl_ = convert_version(cup, Version::Cup, Version::Excl, phi);
    s.cup_ = std::move(cup);
    return s;
}

FShape FShape::zero(std::size_t phi) { return from_cap(phi, SubsetVector(std::size_t{1} << phi, 0)); }

const SubsetVector& FShape::version(Version v) const noexcept
{
    switch (v) {
    case Version::Cap: return cap_;
    case Version::Excl: return excl_;
    case Version::Cup: return cup_;
    }
    return cap_;
}

FShape shape_of(const FSet& sets)
{
    const std::size_t phi = sets.size();
    if (phi == 0 || phi > kMaxPhi) throw ConfigError("shape: need between 1 and " + std::to_string(kMaxPhi) + " facets");
    std::vector<std::set<std::int64_t>> members;
    std::set<std::int64_t> ground;
    for (const auto& s : sets) {
        members.emplace_back(s.begin(), s.end());
        ground.insert(s.begin(), s.end());
    }
    const std::size_t size = std::size_t{1} << phi;
    SubsetVector cap(size, 0);
    cap[0] = static_cast<std::int64_t>(ground.size());
    for (std::size_t a = 1; a < size; ++a) {
        std::int64_t c = 0;
        for (auto v : ground) {
            bool in_all = true;
            for (std::size_t i = 0; i < phi && in_all; ++i)
                if ((a >> i & 1U) && !members[i].contains(v)) in_all = false;
            c += in_all;
        }
        cap[a] = c;
    }
    return FShape::from_cap(phi, std::move(cap));
}

FShape shape_from_facets(const FSet& facets, const std::vector<std::int64_t>& vertices)
{
    if (!vertices.empty()) {
        std::set<std::int64_t> covered;
        for (const auto& f : facets) covered.insert(f.begin(), f.end());
        for (auto v : vertices)
            if (!covered.contains(v)) throw ConfigError("shape_from_facets: vertex " + std::to_string(v) + " lies in no facet");
    }
    return shape_of(facets);
}

std::int64_t product_x0(const FShape& w, const FShape& x)
{
    if (w.phi() != x.phi()) throw ConfigError("shape product: facet counts differ");
    std::int64_t s = 0;
    for (std::uint32_t b = 1; b < x.size(); ++b) s += (card(b) & 1 ? 1 : -1) * w.cap()[b] * x.cap()[b];
    return s;
}

FShape cap_product(const FShape& w, const FShape& x)
{
    if (w.phi() != x.phi()) throw ConfigError("shape product: facet counts differ");
    SubsetVector cap(x.size(), 0);
    for (std::size_t a = 1; a < x.size(); ++a) cap[a] = w.cap()[a] * x.cap()[a];
    cap[0] = union_from_caps(cap);
    return FShape::from_cap(x.phi(), std::move(cap));
}

ShapePredicates shape_predicates(const FShape& x, std::optional<std::int64_t> k)
{
    ShapePredicates p;
    p.phi = x.phi();
    p.x0 = x.x0();
    p.nonnegative = std::all_of(x.excl().begin(), x.excl().end(), [](auto v) { return v >= 0; });
    const std::int64_t first = x.cap()[1];
    p.pure = true;
    for (std::size_t i = 0; i < x.phi(); ++i)
        if (x.cap()[std::size_t{1} << i] != first) p.pure = false;
    if (p.pure) p.purity = first;
    p.k_pure = k.has_value() && p.pure && first == *k;
    return p;
}

bool shape_leq(const FShape& z, const FShape& x)
{
    if (z.phi() != x.phi()) throw ConfigError("shape_leq: facet counts differ");
    for (std::size_t a = 0; a < x.size(); ++a)
        if (x.excl()[a] - z.excl()[a] < 0) return false;
    return true;
}

Rational pair_density(const FShape& x, const FShape& w)
{
    const std::int64_t denom = x.x0() + w.x0();
    if (denom == 0) throw std::domain_error("pair_density: both shapes are empty");
    return make_rational(product_x0(x, w), denom);
}

void for_each_m_pure_shape(std::size_t phi, std::int64_t m, const std::function<void(const FShape&)>& fn, std::uint64_t budget)
{
    if (phi < 1 || phi > kMaxEnumPhi) throw ConfigError("enumerate_m_pure_shapes: phi must lie in 1..4");
    if (m < 0) throw ConfigError("enumerate_m_pure_shapes: m must be nonnegative");
    const double bound = std::pow(static_cast<double>(m + 1), static_cast<double>((std::size_t{1} << phi) - phi));
    if (bound > static_cast<double>(budget))
        throw BudgetExceeded("enumerate_m_pure_shapes: (m+1)^(2^phi-phi) = " + std::to_string(bound) + " exceeds budget " + std::to_string(budget), bound);

    const std::size_t size = std::size_t{1} << phi;
    std::vector<std::uint32_t> free_slots;
    for (std::uint32_t a = 1; a < size; ++a)
        if (card(a) >= 2) free_slots.push_back(a);

    SubsetVector excl(size, 0);
    std::vector<std::int64_t> remaining(phi, m);

    std::function<void(std::size_t)> rec = [&](std::size_t idx) {
        if (idx == free_slots.size()) {
            for (std::size_t i = 0; i < phi; ++i) excl[std::size_t{1} << i] = remaining[i];
            fn(FShape::from_excl(phi, excl));
            return;
        }
        const std::uint32_t a = free_slots[idx];
        std::int64_t cap = m;
        for (std::size_t i = 0; i < phi; ++i)
            if (a >> i & 1U) cap = std::min(cap, remaining[i]);
        for (std::int64_t v = 0; v <= cap; ++v) {
            excl[a] = v;
            for (std::size_t i = 0; i < phi; ++i)
                if (a >> i & 1U) remaining[i] -= v;
            rec(idx + 1);
            for (std::size_t i = 0; i < phi; ++i)
                if (a >> i & 1U) remaining[i] += v;
        }
        excl[a] = 0;
    };
    rec(0);
}

std::vector<FShape> enumerate_m_pure_shapes(std::size_t phi, std::int64_t m, std::uint64_t budget)
{
    std::vector<FShape> out;
    for_each_m_pure_shape(phi, m, [&](const FShape& s) { out.push_back(s); }, budget);
    return out;
}

Rational max_sub_density(const FShape& x, const FShape& w, std::uint64_t budget)
{
    if (x.phi() != w.phi()) throw ConfigError("max_sub_density: facet counts differ");
    if (!shape_predicates(x).nonnegative || !shape_predicates(w).nonnegative)
        throw ConfigError("max_sub_density: shapes must be nonnegative");
    if (x.x0() == 0 || w.x0() == 0) throw ConfigError("max_sub_density: shapes must be nonzero");
    const double work = box_volume(x.excl()) * box_volume(w.excl());
    if (work > static_cast<double>(budget))
        throw BudgetExceeded("max_sub_density: " + std::to_string(work) + " candidate pairs exceed budget " + std::to_string(budget), work);

    const auto zs = nonzero_subshapes(x);
    const auto vs = nonzero_subshapes(w);
    // best = best_num / best_den, compared by cross-multiplication.
    std::int64_t best_num = -1, best_den = 1;
    for (const auto& z : zs)
        for (const auto& v : vs) {
            std::int64_t num = 0;
            for (std::uint32_t b = 1; b < z.cap.size(); ++b) num += (card(b) & 1 ? 1 : -1) * z.cap[b] * v.cap[b];
            const std::int64_t den = z.x0 + v.x0;
            if (best_num < 0 || num * best_den > best_num * den) {
                best_num = num;
                best_den = den;
            }
        }
    return make_rational(best_num, best_den);
}

Rational m_density(const FShape& x, std::int64_t m, std::uint64_t budget)
{
    const auto pred = shape_predicates(x);
    if (!pred.nonnegative || !pred.pure) throw ConfigError("m_density: shape must be nonnegative and pure");
    std::optional<Rational> best;
    for_each_m_pure_shape(x.phi(), m, [&](const FShape& w) {
        Rational d = max_sub_density(x, w, budget);
        if (!best || d < *best) best = std::move(d);
    }, budget);
    return *best;
}

FShape r_shape(std::size_t phi, std::int64_t m)
{
    SubsetVector cap(std::size_t{1} << phi, 0);
    for (std::size_t i = 0; i < phi; ++i) cap[std::size_t{1} << i] = m;
    cap[0] = m * static_cast<std::int64_t>(phi);
    return FShape::from_cap(phi, std::move(cap));
}

Rational r_density(const FShape& x, std::int64_t m)
{
    const auto pred = shape_predicates(x);
    if (!pred.pure) throw ConfigError("r_density: shape must be pure");
    const auto phi = static_cast<std::int64_t>(x.phi());
    const std::int64_t k = *pred.purity;
    Rational closed = make_rational(k * m * phi, x.x0() + m * phi);
    if (closed != pair_density(x, r_shape(x.phi(), m)))
        throw std::logic_error("r_density: closed form disagrees with pair density");
    return closed;
}

ReducedParams reduced_parameters(const FShape& x, const FShape& w)
{
    if (x.phi() != w.phi()) throw ConfigError("reduced_parameters: facet counts differ");
    const auto px = shape_predicates(x);
    const auto pw = shape_predicates(w);
    if (!px.pure || !pw.pure) throw ConfigError("reduced_parameters: both shapes must be pure");
    if (x.x0() <= 0 || w.x0() <= 0 || *px.purity <= 0 || *pw.purity <= 0)
        throw ConfigError("reduced_parameters: shapes must be nonzero");

    ReducedParams r;
    r.x_bar = make_rational(*px.purity);
    r.w_bar = make_rational(*pw.purity);
    r.phi = make_rational(static_cast<std::int64_t>(x.phi()));
    r.xw0 = make_rational(product_x0(x, w));
    const Rational x0 = make_rational(x.x0()), w0 = make_rational(w.x0());
    r.x_w = x0 * r.w_bar / (w0 * r.x_bar);
    r.pi_w_x = r.xw0 / (x0 * r.w_bar);
    r.pi_x_w = r.xw0 / (w0 * r.x_bar);
    r.phi_x = r.phi * r.x_bar / x0;
    r.phi_w = r.phi * r.w_bar / w0;
    r.b = r.xw0 / (x0 + w0);
    return r;
}

Conjecture2Check conjecture2_inequalities(const ReducedParams& r)
{
    Conjecture2Check c;
    const Rational one(1);
    const Rational d_pi = r.pi_x_w - one;
    c.ineq3.lhs = r.x_bar;
    c.ineq4.lhs = r.x_bar;
    if (d_pi != 0) {
        c.ineq3.applicable = true;
        c.ineq3.rhs = (r.phi_w - one) / d_pi;
        c.ineq3.holds = c.ineq3.lhs < c.ineq3.rhs;
        const Rational d_phi = r.phi_x - one;
        if (d_phi != 0) {
            c.ineq4.applicable = true;
            c.ineq4.rhs = (one - r.phi_w * (r.pi_w_x - one) / d_phi) / d_pi;
            c.ineq4.holds = c.ineq4.lhs < c.ineq4.rhs;
        }
    }
    return c;
}

std::string shape_to_json(const FShape& x)
{
    nlohmann::ordered_json j;
    j["phi"] = x.phi();
    j["cap"] = x.cap();
    j["excl"] = x.excl();
    j["cup"] = x.cup();
    return j.dump();
}

FShape shape_from_json(const std::string& text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("shape JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("shape JSON: expected an object");
    for (const auto& [key, _] : j.items())
        if (key != "phi" && key != "cap" && key != "excl" && key != "cup")
            throw ConfigError("shape JSON: unknown key \"" + key + "\"");
    if (!j.contains("phi") || !j["phi"].is_number_unsigned()) throw ConfigError("shape JSON: missing integer \"phi\"");
    const auto phi = j["phi"].get<std::size_t>();
    std::optional<FShape> s;
    try {
        if (j.contains("cap"))
            s = FShape::from_cap(phi, j["cap"].get<SubsetVector>());
        else if (j.contains("excl"))
            s = FShape::from_excl(phi, j["excl"].get<SubsetVector>());
        else if (j.contains("cup"))
            s = FShape::from_cup(phi, j["cup"].get<SubsetVector>());
        else
            throw ConfigError("shape JSON: missing \"cap\"");
        for (const char* v : {"excl", "cup"})
            if (j.contains(v) && j[v].get<SubsetVector>() != s->version(parse_version(v)))
                throw ConfigError(std::string("shape JSON: \"") + v + "\" is inconsistent with the other versions");
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("shape JSON: ") + e.what());
    }
    return *s;
}

}  // namespace nbrcx
