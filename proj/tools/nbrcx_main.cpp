// nbrcx: command-line front end for m-neighbor complex experiments.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nbrcx/census.hpp"
#include "nbrcx/complex.hpp"
#include "nbrcx/config.hpp"
#include "nbrcx/errors.hpp"
#include "nbrcx/exact.hpp"
#include "nbrcx/experiments.hpp"
#include "nbrcx/graph.hpp"
#include "nbrcx/records.hpp"
#include "nbrcx/regime.hpp"
#include "nbrcx/shape.hpp"
#include "nbrcx/version.hpp"

using namespace nbrcx;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

struct Common {
    bool json_out = false;
    std::size_t threads = 1;
};

json parse_json_arg(const std::string& text, const std::string& what)
{
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(what + ": " + e.what());
    }
}

// Accepts inline JSON or @path.
json json_arg(const std::string& text, const std::string& what)
{
    if (!text.empty() && text[0] == '@') return load_json_file(text.substr(1));
    return parse_json_arg(text, what);
}

FSet facets_arg(const std::string& text)
{
    const json j = json_arg(text, "facets");
    if (!j.is_array()) throw ConfigError("facets: expected a list of lists");
    FSet out;
    for (const auto& f : j) {
        if (!f.is_array()) throw ConfigError("facets: expected a list of lists");
        std::vector<std::int64_t> facet;
        for (const auto& v : f) {
            if (!v.is_number_integer()) throw ConfigError("facets: vertex labels must be integers");
            facet.push_back(v.get<std::int64_t>());
        }
        out.push_back(std::move(facet));
    }
    return out;
}

FShape shape_arg(const std::string& text)
{
    if (!text.empty() && text[0] == '@') return shape_from_json(load_json_file(text.substr(1)).dump());
    return shape_from_json(text);
}

Graph load_graph(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw IoError("cannot read graph file " + path);
    return read_edge_list(in);
}

SimplicialComplex load_complex(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw IoError("cannot read complex file " + path);
    return read_complex(in);
}

template <typename Writer>
void save(const std::string& path, Writer&& w)
{
    std::ostringstream ss;
    w(ss);
    write_file_atomic(resolve_output_path(path), ss.str());
}

void emit(const Common& c, const ordered_json& j, const std::string& text)
{
    if (c.json_out)
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text;
}

ordered_json rational_json(const Rational& r)
{
    return {{"exact", to_string(r)}, {"value", to_double(r)}};
}

ordered_json shape_json(const FShape& x)
{
    return ordered_json::parse(shape_to_json(x));
}

ordered_json profile_json(const CensusProfile& p)
{
    return {{"n", p.n}, {"counts", p.counts}, {"ratios", p.ratios}};
}

std::string profile_text(const CensusProfile& p)
{
    std::ostringstream ss;
    ss << "card\tcount\tratio\n";
    for (std::size_t c = 1; c < p.counts.size(); ++c)
        ss << c << "\t" << p.counts[c] << "\t" << format_number(p.ratios[c]) << "\n";
    return ss.str();
}

// ------------------------------------------------------------------ sample

struct SampleOpts {
    std::optional<long long> n, m;
    std::optional<double> p;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> cap;
    std::string config, out, complex_out;
};

int run_sample(const Common& c, const SampleOpts& o)
{
    json flags = json::object();
    flags["kind"] = "support_census";
    if (o.n) flags["n"] = *o.n;
    if (o.m) flags["m"] = *o.m;
    if (o.p) flags["p"] = *o.p;
    if (o.seed) flags["seed"] = *o.seed;
    if (o.cap) flags["cap"] = *o.cap;
    const ParsedConfig pc = o.config.empty() ? parse_config(std::nullopt, flags) : parse_config_file(o.config, flags);
    for (const auto& w : pc.warnings) std::cerr << "warning: " << w << "\n";
    const ExperimentConfig& cfg = pc.config;
    if (cfg.n.size() != 1 || cfg.m.size() != 1 || cfg.p.size() != 1)
        throw ConfigError("sample takes a single n, m and p");

    const Graph g = sample_er(static_cast<std::size_t>(cfg.n[0]), cfg.p[0], trial_seed(cfg, 0, 0));
    if (!o.out.empty()) save(o.out, [&](std::ostream& s) { write_edge_list(g, s); });

    ordered_json j{{"config", config_to_json(cfg)}, {"vertices", g.vertex_count()}, {"edges", g.edge_count()}};
    std::ostringstream text;
    text << "n=" << g.vertex_count() << " edges=" << g.edge_count() << "\n";
    if (cfg.cap) {
        const SimplicialComplex kx = m_neighbor_complex(g, static_cast<std::size_t>(cfg.m[0]), *cfg.cap);
        const CensusProfile prof = count_faces(kx);
        j["census"] = profile_json(prof);
        text << profile_text(prof);
        if (!o.complex_out.empty()) save(o.complex_out, [&](std::ostream& s) { write_complex(kx, s); });
    }
    emit(c, j, text.str());
    return 0;
}

// ------------------------------------------------------------------ complex

struct ComplexOpts {
    std::string graph, model = "neighbor", out;
    std::optional<long long> n;
    std::optional<double> p, q;
    std::optional<std::size_t> m, cap, k, support_k;
    std::uint64_t seed = 0;
};

int run_complex(const Common& c, const ComplexOpts& o)
{
    SimplicialComplex kx(1, 1);
    if (o.model == "lm") {
        if (!o.n || !o.k || !o.q) throw ConfigError("complex --model lm needs --n, --k and --q");
        if (*o.n < 1) throw ConfigError("--n must be at least 1");
        kx = sample_linial_meshulam(static_cast<std::size_t>(*o.n), *o.k, *o.q, Seed{o.seed, 0});
    } else if (o.model == "neighbor") {
        if (!o.m) throw ConfigError("complex needs --m");
        Graph g(1);
        if (!o.graph.empty()) {
            g = load_graph(o.graph);
        } else {
            if (!o.n || !o.p) throw ConfigError("complex needs --graph or both --n and --p");
            if (*o.n < 1) throw ConfigError("--n must be at least 1");
            g = sample_er(static_cast<std::size_t>(*o.n), *o.p, Seed{o.seed, 0});
        }
        std::size_t cap = g.vertex_count();
        if (o.cap) cap = *o.cap;
        kx = m_neighbor_complex(g, *o.m, cap);
    } else {
        throw ConfigError("unknown --model " + o.model + " (neighbor, lm)");
    }
    if (!o.out.empty()) save(o.out, [&](std::ostream& s) { write_complex(kx, s); });

    const CensusProfile prof = count_faces(kx);
    ordered_json j{{"census", profile_json(prof)}, {"facets", kx.facets().size()}};
    std::string text = profile_text(prof);
    if (o.support_k) {
        const SupportReport r = support_class(kx, *o.support_k);
        j["support"] = {{"k", r.k},           {"count_below", r.count_below}, {"total_below", r.total_below},
                        {"all_below", r.all_below}, {"count_above", r.count_above}, {"none_above", r.none_above},
                        {"in_y", r.in_y}};
        text += std::string("in Y_{n,") + std::to_string(*o.support_k - 1) + "}: " + (r.in_y ? "yes" : "no") + "\n";
    }
    emit(c, j, text);
    return 0;
}

// ------------------------------------------------------------------ regime

struct RegimeOpts {
    std::optional<long long> n, m;
    std::optional<double> p;
    std::vector<long long> corollary, two_facet;
    std::string p_rule, m_rule;
    std::vector<double> grid;
};

int run_regime(const Common& c, const RegimeOpts& o)
{
    ordered_json j = ordered_json::object();
    std::ostringstream text;
    bool did = false;
    if (o.n || o.m || o.p) {
        if (!o.n || !o.m || !o.p) throw ConfigError("regime needs --n, --m and --p together");
        const RegimeParams r = regime_params(*o.n, *o.m, *o.p);
        ordered_json rp{{"n", r.n}, {"m", r.m}, {"p", r.p}, {"t", r.t}, {"tau", r.tau}, {"q", r.q_face}, {"kappa", r.kappa}};
        if (r.bounds)
            rp["bounds"] = {{"c1", r.bounds->c1},
                            {"bound1", r.bounds->bound1},
                            {"c2", r.bounds->c2},
                            {"bound2", r.bounds->bound2}};
        else
            rp["bounds"] = nullptr;
        j["params"] = rp;
        text << "t=" << r.t << " tau=" << format_number(r.tau) << " q=" << format_number(r.q_face)
             << " kappa=" << format_number(r.kappa) << "\n";
        if (r.bounds)
            text << "c1=" << format_number(r.bounds->c1) << " bound1=" << format_number(r.bounds->bound1)
                 << " c2=" << format_number(r.bounds->c2) << " bound2=" << format_number(r.bounds->bound2) << "\n";
        did = true;
    }
    if (!o.corollary.empty()) {
        if (o.corollary.size() != 2) throw ConfigError("--corollary takes k m");
        const CorollaryInterval ci = corollary_interval(o.corollary[0], o.corollary[1]);
        ordered_json cj{{"k", o.corollary[0]}, {"m", o.corollary[1]}, {"exists_interval", ci.exists_interval}};
        if (ci.constant_interval)
            cj["constant_interval"] = {rational_json(ci.constant_interval->first),
                                       rational_json(ci.constant_interval->second)};
        else
            cj["constant_interval"] = nullptr;
        j["corollary"] = cj;
        text << "corollary interval exists: " << (ci.exists_interval ? "yes" : "no") << "\n";
        did = true;
    }
    if (!o.two_facet.empty()) {
        if (o.two_facet.size() != 3) throw ConfigError("--two-facet takes k l m");
        const TwoFacetThresholds t = two_facet_thresholds(o.two_facet[0], o.two_facet[1], o.two_facet[2]);
        j["two_facet"] = {{"k", t.k},
                          {"l", t.l},
                          {"m", t.m},
                          {"crossover", rational_json(t.crossover)},
                          {"pair_threshold", rational_json(t.pair_threshold)},
                          {"all_faces", rational_json(t.all_faces)},
                          {"third_phenomenon", t.third_phenomenon}};
        text << "pair threshold " << to_string(t.pair_threshold) << ", all faces " << to_string(t.all_faces)
             << ", crossover " << to_string(t.crossover) << "\n";
        did = true;
    }
    if (!o.p_rule.empty() || !o.m_rule.empty()) {
        if (o.grid.empty()) throw ConfigError("--p-rule/--m-rule need --grid");
        const Family fam = parse_family(o.p_rule, o.m_rule);
        const ConditionReport r = theorem1_condition_check(fam, o.grid);
        ordered_json rows = ordered_json::array();
        for (const auto& row : r.rows)
            rows.push_back({{"n", row.n}, {"p", row.p}, {"m", row.m}, {"t", row.t}, {"tau", row.tau},
                            {"growth", row.growth}, {"kappa", row.kappa}});
        j["conditions"] = {{"rows", rows},
                           {"p_constant", r.p_constant},
                           {"p_decreasing", r.p_decreasing},
                           {"m_constant", r.m_constant},
                           {"cond1", r.cond1},
                           {"cond2", r.cond2},
                           {"cond3", r.cond3},
                           {"beta", r.beta ? ordered_json(*r.beta) : ordered_json(nullptr)},
                           {"cond3_t", r.cond3_t},
                           {"which", r.which}};
        text << "conditions: 1=" << r.cond1 << " 2=" << r.cond2 << " 3=" << r.cond3 << " first=" << r.which << "\n";
        did = true;
    }
    if (!did) throw ConfigError("regime: nothing to compute (give --n/--m/--p, --corollary, --two-facet or a family)");
    emit(c, j, text.str());
    return 0;
}

// ------------------------------------------------------------------ shape

struct ShapeOpts {
    std::string verb, complex_path, facets, x, w, to = "cap";
    std::optional<std::int64_t> m, k;
    std::uint64_t budget = kDefaultBudget;
};

ordered_json check_json(const InequalityCheck& c)
{
    if (!c.applicable) return {{"applicable", false}};
    return {{"applicable", true}, {"lhs", rational_json(c.lhs)}, {"rhs", rational_json(c.rhs)}, {"holds", c.holds}};
}

int run_shape(const Common& c, const ShapeOpts& o)
{
    ordered_json j;
    std::ostringstream text;
    if (o.verb == "from-complex") {
        FSet facets;
        if (!o.complex_path.empty()) {
            const SimplicialComplex kx = load_complex(o.complex_path);
            for (const auto& f : kx.facets()) facets.emplace_back(f.begin(), f.end());
        } else if (!o.facets.empty()) {
            facets = facets_arg(o.facets);
        } else {
            throw ConfigError("shape from-complex needs --complex or --facets");
        }
        const FShape s = shape_of(facets);
        j = shape_json(s);
        const ShapePredicates pr = shape_predicates(s, o.k);
        j["pure"] = pr.pure;
        j["x0"] = pr.x0;
        text << shape_to_json(s) << "\n";
    } else if (o.verb == "convert") {
        const FShape s = shape_arg(o.x);
        const Version v = parse_version(o.to);
        const SubsetVector& vals = v == Version::Cap ? s.cap() : v == Version::Excl ? s.excl() : s.cup();
        j = {{"phi", s.phi()}, {version_name(v), vals}};
        text << j.dump() << "\n";
    } else if (o.verb == "density") {
        const FShape x = shape_arg(o.x), w = shape_arg(o.w);
        const Rational b = pair_density(x, w);
        j = {{"density", rational_json(b)}};
        text << to_string(b) << "\n";
    } else if (o.verb == "m-density") {
        if (!o.m) throw ConfigError("shape m-density needs --m");
        const FShape x = shape_arg(o.x);
        const Rational b = m_density(x, *o.m, o.budget);
        j = {{"m", *o.m}, {"m_density", rational_json(b)}};
        if (shape_predicates(x).pure) j["r_density"] = rational_json(r_density(x, *o.m));
        text << to_string(b) << "\n";
    } else if (o.verb == "reduce") {
        const FShape x = shape_arg(o.x), w = shape_arg(o.w);
        const ReducedParams r = reduced_parameters(x, w);
        const Conjecture2Check chk = conjecture2_inequalities(r);
        j = {{"x_bar", rational_json(r.x_bar)}, {"w_bar", rational_json(r.w_bar)}, {"phi", rational_json(r.phi)},
             {"xw0", rational_json(r.xw0)},     {"x_w", rational_json(r.x_w)},     {"pi_w_x", rational_json(r.pi_w_x)},
             {"pi_x_w", rational_json(r.pi_x_w)}, {"phi_x", rational_json(r.phi_x)}, {"phi_w", rational_json(r.phi_w)},
             {"b", rational_json(r.b)},         {"ineq3", check_json(chk.ineq3)}, {"ineq4", check_json(chk.ineq4)}};
        auto line = [](const char* name, const InequalityCheck& k) {
            if (!k.applicable) return std::string(name) + ": inapplicable\n";
            return std::string(name) + ": " + to_string(k.lhs) + " < " + to_string(k.rhs) + (k.holds ? " (holds)\n" : " (fail)\n");
        };
        text << "b=" << to_string(r.b) << "\n" << line("(3)", chk.ineq3) << line("(4)", chk.ineq4);
    } else {
        throw ConfigError("unknown shape verb " + o.verb + " (from-complex, convert, density, m-density, reduce)");
    }
    emit(c, j, text.str());
    return 0;
}

// ------------------------------------------------------------------ census

struct CensusOpts {
    std::string complex_path, x, graph;
    std::optional<std::size_t> witness_k, witness_m;
};

int run_census(const Common& c, const CensusOpts& o)
{
    ordered_json j = ordered_json::object();
    std::string text;
    if (!o.complex_path.empty()) {
        const SimplicialComplex kx = load_complex(o.complex_path);
        const CensusProfile prof = count_faces(kx);
        j["census"] = profile_json(prof);
        text += profile_text(prof);
        if (!o.x.empty()) {
            const auto copies = count_copies(kx, complex_from_facets(facets_arg(o.x)));
            j["copies"] = copies;
            text += "copies=" + std::to_string(copies) + "\n";
        }
    }
    if (o.witness_k) {
        if (o.graph.empty() || !o.witness_m) throw ConfigError("--witness-k needs --graph and --witness-m");
        const auto w = count_k_set_witness_pairs(load_graph(o.graph), *o.witness_k, *o.witness_m);
        j["witness_pairs"] = w;
        text += "witness_pairs=" + std::to_string(w) + "\n";
    }
    if (j.empty()) throw ConfigError("census needs --complex or --graph with --witness-k");
    emit(c, j, text);
    return 0;
}

// ------------------------------------------------------------------ sweep / probe

struct RunOpts {
    std::string config, kind, property, x, output;
    std::vector<long long> n, m;
    std::vector<double> p, beta;
    std::optional<std::size_t> k, trials, cap;
    std::optional<std::uint64_t> seed;
};

int run_experiment(const Common& c, const RunOpts& o, const char* default_kind, std::size_t threads_given)
{
    json flags = json::object();
    if (!o.kind.empty()) flags["kind"] = o.kind;
    if (!o.n.empty()) flags["n"] = o.n;
    if (!o.m.empty()) flags["m"] = o.m;
    if (!o.p.empty()) flags["p"] = o.p;
    if (!o.beta.empty()) flags["beta"] = o.beta;
    if (!o.property.empty()) flags["property"] = o.property;
    if (!o.x.empty()) flags["x"] = json_arg(o.x, "x");
    if (o.k) flags["k"] = *o.k;
    if (o.trials) flags["trials"] = *o.trials;
    if (o.cap) flags["cap"] = *o.cap;
    if (o.seed) flags["seed"] = *o.seed;
    if (!o.output.empty()) flags["output"] = o.output;
    if (threads_given) flags["threads"] = c.threads;

    std::optional<json> file;
    if (!o.config.empty()) file = load_json_file(o.config);
    if (!flags.contains("kind") && !(file && file->contains("kind"))) flags["kind"] = default_kind;
    const ParsedConfig pc = parse_config(file, flags);
    for (const auto& w : pc.warnings) std::cerr << "warning: " << w << "\n";
    const ExperimentConfig& cfg = pc.config;

    RunManifest man;
    man.tool_version = kToolVersion;
    man.config = config_to_json(cfg);
    man.seed = cfg.seed;
    man.started = utc_timestamp();
    const auto t0 = std::chrono::steady_clock::now();

    std::string csv;
    ordered_json summary;
    switch (cfg.kind) {
    case ExperimentKind::SupportCensus: {
        const auto r = run_support_census(cfg);
        csv = support_csv(r.records);
        summary = summary_json(r);
        break;
    }
    case ExperimentKind::CopyCount: {
        const auto r = run_copy_count_sweep(cfg);
        csv = copy_csv(r.records);
        summary = summary_json(r);
        break;
    }
    case ExperimentKind::ThresholdProbe: {
        const auto r = run_threshold_probe(cfg);
        csv = probe_csv(r.records);
        summary = summary_json(r);
        break;
    }
    case ExperimentKind::Theorem3Ratio: {
        const auto r = theorem3_ratio_probe(cfg);
        csv = theorem3_csv(r.rows);
        summary = summary_json(r);
        if (!r.hypotheses.all()) std::cerr << "warning: " << r.trend << "\n";
        break;
    }
    }

    if (!cfg.output.empty()) {
        const std::string path = resolve_output_path(cfg.output);
        man.outputs = write_records(cfg, path, csv, summary);
        man.finished = utc_timestamp();
        man.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        man.outputs.push_back(path + ".manifest.json");
        write_manifest(man, path);
    }
    ordered_json j{{"config", man.config}, {"summary", summary}, {"outputs", man.outputs}};
    emit(c, j, cfg.output.empty() ? csv : "wrote " + std::to_string(man.outputs.size()) + " files for " + cfg.output + "\n");
    return 0;
}

// ------------------------------------------------------------------ exact

struct ExactOpts {
    std::size_t n = 0, m = 0, k = 0;
    double p = 0.5, q = 0.5;
    std::string q_rule = "explicit";
    std::vector<std::uint32_t> covariance;
    std::optional<std::uint32_t> face;
    bool distributions = false;
};

std::uint32_t set_mask(const std::vector<std::uint32_t>& verts, std::size_t n)
{
    std::uint32_t s = 0;
    for (auto v : verts) {
        if (v >= n) throw ConfigError("vertex " + std::to_string(v) + " out of range");
        s |= 1U << v;
    }
    return s;
}

int run_exact(const Common& c, const ExactOpts& o, const std::string& f1, const std::string& f2)
{
    ordered_json j;
    std::ostringstream text;
    auto verts = [](const std::string& s) {
        std::vector<std::uint32_t> v;
        for (const auto& e : json_arg(s, "vertex set")) v.push_back(e.get<std::uint32_t>());
        return v;
    };
    if (!f1.empty() || !f2.empty()) {
        if (f1.empty() || f2.empty()) throw ConfigError("--f1 and --f2 go together");
        const CovarianceReport r =
            face_covariance_probe(o.n, o.m, o.p, set_mask(verts(f1), o.n), set_mask(verts(f2), o.n));
        j = {{"n", o.n}, {"m", o.m}, {"p", o.p}, {"p1", r.p1}, {"p2", r.p2}, {"joint", r.joint}, {"covariance", r.covariance}};
        text << "covariance=" << format_number(r.covariance) << "\n";
    } else {
        if (o.k == 0) throw ConfigError("exact needs --k (or --f1/--f2 for a covariance probe)");
        const ExactComparison r = exact_small_distribution(o.n, o.m, o.p, o.k, o.q, parse_q_rule(o.q_rule));
        j = exact_json(r, o.distributions);
        text << "q=" << format_number(r.q) << " tv=" << format_number(r.tv) << "\n";
        if (!r.note.empty()) text << "note: " << r.note << "\n";
    }
    emit(c, j, text.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"m-neighbor complexes of random graphs: sampling, regimes, shapes and experiments"};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);
    Common common;

    auto add_common = [&](CLI::App* sub) {
        sub->add_flag("--json", common.json_out, "Machine-readable JSON output");
        return sub->add_option("--threads", common.threads, "Worker threads (results are identical at any width)")
            ->check(CLI::PositiveNumber);
    };

    SampleOpts so;
    auto* sample = app.add_subcommand("sample", "Sample G(n,p); with --m also build N_m(G) up to the default cap");
    add_common(sample);
    sample->add_option("--n", so.n, "Vertex count");
    sample->add_option("--p", so.p, "Edge probability");
    sample->add_option("--m", so.m, "Common-neighbor threshold");
    sample->add_option("--seed", so.seed, "Master seed");
    sample->add_option("--cap", so.cap, "Largest face cardinality to build (default t+2)");
    sample->add_option("--config", so.config, "JSON config file");
    sample->add_option("--out", so.out, "Write the edge list here");
    sample->add_option("--complex-out", so.complex_out, "Write the complex here");

    ComplexOpts co;
    auto* cx = app.add_subcommand("complex", "Build N_m(G) from a graph or sample a Linial-Meshulam complex");
    add_common(cx);
    cx->add_option("--model", co.model, "neighbor (default) or lm");
    cx->add_option("--graph", co.graph, "Edge-list file");
    cx->add_option("--n", co.n, "Vertex count when sampling");
    cx->add_option("--p", co.p, "Edge probability when sampling");
    cx->add_option("--m", co.m, "Common-neighbor threshold");
    cx->add_option("--cap", co.cap, "Largest face cardinality to build");
    cx->add_option("--k", co.k, "LM: cardinality of the random layer");
    cx->add_option("--q", co.q, "LM: face probability");
    cx->add_option("--seed", co.seed, "Seed");
    cx->add_option("--support", co.support_k, "Report whether the complex lies in Y_{n,k-1}");
    cx->add_option("--out", co.out, "Write the complex here");

    RegimeOpts ro;
    auto* rg = app.add_subcommand("regime", "Derived parameters, bounds, thresholds and family diagnostics");
    add_common(rg);
    rg->add_option("--n", ro.n);
    rg->add_option("--m", ro.m);
    rg->add_option("--p", ro.p);
    rg->add_option("--corollary", ro.corollary, "k m")->expected(2);
    rg->add_option("--two-facet", ro.two_facet, "k l m")->expected(3);
    rg->add_option("--p-rule", ro.p_rule, "const:<v>, inv_lnln or n_pow:<b>");
    rg->add_option("--m-rule", ro.m_rule, "const:<v>, ceil_div:<d> or round_np2");
    rg->add_option("--grid", ro.grid, "n values for the family check")->delimiter(',');

    ShapeOpts sho;
    auto* sh = app.add_subcommand("shape", "F-shape tools");
    add_common(sh);
    sh->add_option("verb", sho.verb, "from-complex, convert, density, m-density or reduce")->required();
    sh->add_option("--complex", sho.complex_path, "Complex file (from-complex)");
    sh->add_option("--facets", sho.facets, "Facets as JSON or @file (from-complex)");
    sh->add_option("--x", sho.x, "Shape JSON or @file");
    sh->add_option("--w", sho.w, "Second shape JSON or @file");
    sh->add_option("--to", sho.to, "cap, excl or cup (convert)");
    sh->add_option("--m", sho.m, "Witness count (m-density)");
    sh->add_option("--k", sho.k, "Purity check against k");
    sh->add_option("--budget", sho.budget, "Enumeration budget");

    CensusOpts ceo;
    auto* ce = app.add_subcommand("census", "Face counts, copy counts and witness-pair counts");
    add_common(ce);
    ce->add_option("--complex", ceo.complex_path, "Complex file");
    ce->add_option("--x", ceo.x, "Target complex facets as JSON or @file");
    ce->add_option("--graph", ceo.graph, "Edge-list file (witness pairs)");
    ce->add_option("--witness-k", ceo.witness_k);
    ce->add_option("--witness-m", ceo.witness_m);

    RunOpts sw_opts, pr_opts;
    auto add_run = [&](CLI::App* sub, RunOpts& o) {
        sub->add_option("--config", o.config, "JSON config file");
        sub->add_option("--kind", o.kind, "support_census, copy_count, threshold_probe or theorem3_ratio");
        sub->add_option("--n", o.n)->delimiter(',');
        sub->add_option("--m", o.m)->delimiter(',');
        sub->add_option("--p", o.p)->delimiter(',');
        sub->add_option("--beta", o.beta)->delimiter(',');
        sub->add_option("--property", o.property, "contains_x, all_k_faces or some_k_face");
        sub->add_option("--x", o.x, "Target complex facets as JSON or @file");
        sub->add_option("--k", o.k);
        sub->add_option("--trials", o.trials);
        sub->add_option("--cap", o.cap);
        sub->add_option("--seed", o.seed);
        sub->add_option("--output", o.output, "CSV path; a .json sidecar and a .manifest.json are written beside it");
    };
    auto* sw = app.add_subcommand("sweep", "Run a support census or copy-count sweep");
    auto* sw_threads = add_common(sw);
    add_run(sw, sw_opts);
    auto* pr = app.add_subcommand("probe", "Run a threshold probe or the Theorem-3 ratio probe");
    auto* pr_threads = add_common(pr);
    add_run(pr, pr_opts);

    ExactOpts eo;
    std::string f1, f2;
    auto* ex = app.add_subcommand("exact", "Exact small-n distributions, TV distance and face covariances");
    add_common(ex);
    ex->add_option("--n", eo.n)->required();
    ex->add_option("--m", eo.m)->required();
    ex->add_option("--p", eo.p)->required();
    ex->add_option("--k", eo.k);
    ex->add_option("--q", eo.q);
    ex->add_option("--q-rule", eo.q_rule, "explicit, face, conj1 or thm3");
    ex->add_option("--f1", f1, "Vertex set as JSON list");
    ex->add_option("--f2", f2, "Vertex set as JSON list");
    ex->add_flag("--distributions", eo.distributions, "Include full distributions in JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*sample) return run_sample(common, so);
        if (*cx) return run_complex(common, co);
        if (*rg) return run_regime(common, ro);
        if (*sh) return run_shape(common, sho);
        if (*ce) return run_census(common, ceo);
        if (*sw) return run_experiment(common, sw_opts, "support_census", sw_threads->count());
        if (*pr) return run_experiment(common, pr_opts, "threshold_probe", pr_threads->count());
        if (*ex) return run_exact(common, eo, f1, f2);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const BoundInapplicable& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
