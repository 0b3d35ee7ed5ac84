#include "nbrcx/config.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "nbrcx/errors.hpp"

namespace nbrcx {

using nlohmann::json;

namespace {

const std::set<std::string> kKeys = {"kind", "n",      "m",     "p",      "beta",    "family", "property", "k",
                                     "x",    "cap",    "trials", "seed",  "output",  "threads", "budget"};

[[noreturn]] void bad(const std::string& field, const std::string& why)
{
    throw ConfigError("config field \"" + field + "\": " + why);
}

long long as_int(const json& v, const std::string& field)
{
    if (!v.is_number_integer()) bad(field, "expected an integer");
    if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX))
        bad(field, "integer out of range");
    return v.get<long long>();
}

std::uint64_t as_uint(const json& v, const std::string& field)
{
    if (!v.is_number_integer()) bad(field, "expected a nonnegative integer");
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    const long long x = v.get<long long>();
    if (x < 0) bad(field, "expected a nonnegative integer");
    return static_cast<std::uint64_t>(x);
}

double as_real(const json& v, const std::string& field)
{
    if (!v.is_number()) bad(field, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) bad(field, "expected a finite number");
    return x;
}

template <typename T, typename Conv>
std::vector<T> as_list(const json& v, const std::string& field, Conv conv)
{
    std::vector<T> out;
    if (v.is_array()) {
        if (v.empty()) bad(field, "list must be nonempty");
        for (const auto& e : v) out.push_back(conv(e, field));
    } else {
        out.push_back(conv(v, field));
    }
    return out;
}

std::string as_string(const json& v, const std::string& field)
{
    if (!v.is_string()) bad(field, "expected a string");
    return v.get<std::string>();
}

FSet as_facets(const json& v)
{
    if (!v.is_array() || v.empty()) bad("x", "expected a nonempty list of facets");
    FSet out;
    for (const auto& f : v) {
        if (!f.is_array() || f.empty()) bad("x", "each facet must be a nonempty list of vertex labels");
        std::vector<std::int64_t> facet;
        for (const auto& e : f) facet.push_back(as_int(e, "x"));
        out.push_back(std::move(facet));
    }
    return out;
}

void check_keys(const json& obj, const char* source)
{
    if (!obj.is_object()) throw ConfigError(std::string(source) + ": expected a JSON object");
    for (const auto& [key, _] : obj.items())
        if (!kKeys.count(key)) throw ConfigError(std::string(source) + ": unknown key \"" + key + "\"");
}

}  // namespace

ParsedConfig parse_config(const std::optional<json>& file, const json& flags)
{
    ParsedConfig out;
    json merged = json::object();
    if (file) {
        check_keys(*file, "config file");
        merged = *file;
    }
    check_keys(flags, "flags");
    for (const auto& [key, value] : flags.items()) {
        if (merged.contains(key))
            out.warnings.push_back("flag --" + key + " overrides the config file value");
        merged[key] = value;
    }

    ExperimentConfig& c = out.config;
    if (merged.contains("kind")) c.kind = parse_kind(as_string(merged["kind"], "kind"));

    if (!merged.contains("n")) throw ConfigError("config: missing required key \"n\"");
    c.n = as_list<long long>(merged["n"], "n", as_int);
    for (auto n : c.n)
        if (n < 1) bad("n", "must be at least 1");

    if (!merged.contains("seed")) throw ConfigError("config: missing required key \"seed\"");
    c.seed = as_uint(merged["seed"], "seed");

    if (merged.contains("family")) {
        const json& f = merged["family"];
        if (!f.is_object()) bad("family", "expected an object with p_rule and m_rule");
        for (const auto& [key, _] : f.items())
            if (key != "p_rule" && key != "m_rule") bad("family", "unknown key \"" + key + "\"");
        if (!f.contains("p_rule")) bad("family", "missing p_rule");
        if (!f.contains("m_rule")) bad("family", "missing m_rule");
        c.family = parse_family(as_string(f["p_rule"], "family.p_rule"), as_string(f["m_rule"], "family.m_rule"));
        if (c.kind != ExperimentKind::SupportCensus) bad("family", "only the support census takes a family");
        if (merged.contains("m") || merged.contains("p")) bad("family", "cannot be combined with m or p");
    }

    if (merged.contains("m")) {
        c.m = as_list<long long>(merged["m"], "m", as_int);
        for (auto m : c.m)
            if (m < 1) bad("m", "must be at least 1");
    } else if (!c.family) {
        throw ConfigError("config: missing required key \"m\"");
    }

    if (merged.contains("p")) {
        c.p = as_list<double>(merged["p"], "p", as_real);
        for (double p : c.p)
            if (p < 0 || p > 1) bad("p", "must lie in [0, 1]");
    }
    if (merged.contains("beta")) {
        c.beta = as_list<double>(merged["beta"], "beta", as_real);
        for (double b : c.beta)
            if (!(b > 0)) bad("beta", "must be positive");
    }
    if (c.kind == ExperimentKind::SupportCensus) {
        if (!c.family && c.p.empty()) throw ConfigError("config: missing required key \"p\"");
        if (!c.beta.empty()) bad("beta", "the support census is parameterized by p");
    } else {
        if (c.beta.empty()) throw ConfigError("config: missing required key \"beta\"");
        if (!c.p.empty()) bad("p", std::string(kind_name(c.kind)) + " derives p = n^(-1/beta); give beta instead");
    }

    if (merged.contains("property")) c.property = parse_property(as_string(merged["property"], "property"));
    if (merged.contains("k")) {
        const long long k = as_int(merged["k"], "k");
        if (k < 1) bad("k", "must be at least 1");
        c.k = static_cast<std::size_t>(k);
    }
    if (merged.contains("x")) c.x_facets = as_facets(merged["x"]);

    switch (c.kind) {
    case ExperimentKind::SupportCensus: break;
    case ExperimentKind::CopyCount:
    case ExperimentKind::Theorem3Ratio:
        if (c.x_facets.empty()) throw ConfigError("config: missing required key \"x\"");
        break;
    case ExperimentKind::ThresholdProbe:
        if (!c.property) throw ConfigError("config: missing required key \"property\"");
        if (*c.property == ProbeProperty::ContainsX && c.x_facets.empty())
            throw ConfigError("config: missing required key \"x\"");
        if (*c.property != ProbeProperty::ContainsX && c.k == 0)
            throw ConfigError("config: missing required key \"k\"");
        break;
    }

    if (merged.contains("trials")) {
        const auto t = as_uint(merged["trials"], "trials");
        if (t < 1) bad("trials", "must be at least 1");
        c.trials = static_cast<std::size_t>(t);
    }
    if (merged.contains("threads")) {
        const auto t = as_uint(merged["threads"], "threads");
        if (t < 1) bad("threads", "must be at least 1");
        c.threads = static_cast<std::size_t>(t);
    }
    if (merged.contains("budget")) {
        c.budget = as_uint(merged["budget"], "budget");
        if (c.budget < 1) bad("budget", "must be at least 1");
    }
    if (merged.contains("output")) c.output = as_string(merged["output"], "output");

    if (merged.contains("cap")) {
        const long long cap = as_int(merged["cap"], "cap");
        if (cap < 1) bad("cap", "must be at least 1");
        c.cap = static_cast<std::size_t>(cap);
    } else if (c.kind == ExperimentKind::SupportCensus && !c.family && c.n.size() == 1 && c.m.size() == 1 &&
               c.p.size() == 1) {
        const double n = static_cast<double>(c.n[0]), m = static_cast<double>(c.m[0]);
        if (c.m[0] < c.n[0] && c.p[0] > 0 && c.p[0] < 1) {
            const auto t = compute_t_tau(n, m, c.p[0]).t;
            if (t >= 1) c.cap = static_cast<std::size_t>(t + 2);
        }
    }
    return out;
}

json load_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return json::parse(ss.str());
    } catch (const json::exception& e) {
        throw ConfigError("config file " + path + ": " + e.what());
    }
}

ParsedConfig parse_config_file(const std::string& path, const json& flags)
{
    return parse_config(load_json_file(path), flags);
}

nlohmann::ordered_json config_to_json(const ExperimentConfig& c)
{
    nlohmann::ordered_json j;
    j["kind"] = kind_name(c.kind);
    j["n"] = c.n;
    if (!c.m.empty()) j["m"] = c.m;
    if (!c.p.empty()) j["p"] = c.p;
    if (!c.beta.empty()) j["beta"] = c.beta;
    if (c.family) j["family"] = {{"p_rule", c.family->p_rule}, {"m_rule", c.family->m_rule}};
    if (c.property) j["property"] = property_name(*c.property);
    if (c.k) j["k"] = c.k;
    if (!c.x_facets.empty()) j["x"] = c.x_facets;
    if (c.cap) j["cap"] = *c.cap;
    j["trials"] = c.trials;
    j["seed"] = c.seed;
    j["output"] = c.output;
    j["threads"] = c.threads;
    j["budget"] = c.budget;
    return j;
}

std::string resolve_output_path(const std::string& path)
{
    const char* dir = std::getenv("NBRCX_OUTPUT_DIR");
    if (path.empty() || dir == nullptr || *dir == '\0') return path;
    const std::filesystem::path p(path);
    if (p.is_absolute()) return path;
    return (std::filesystem::path(dir) / p).string();
}

}  // namespace nbrcx
