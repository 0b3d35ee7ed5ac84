#include "nbrcx/records.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <system_error>
#include <unistd.h>

#include "nbrcx/config.hpp"
#include "nbrcx/errors.hpp"
#include "nbrcx/version.hpp"

namespace nbrcx {

using nlohmann::ordered_json;

std::string format_number(double x)
{
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (x == 0) return "0";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

namespace {

template <typename T>
std::string cell(const T& v)
{
    if constexpr (std::is_same_v<T, bool>)
        return v ? "1" : "0";
    else if constexpr (std::is_floating_point_v<T>)
        return format_number(static_cast<double>(v));
    else
        return std::to_string(v);
}

template <typename... Ts>
void row(std::string& out, const Ts&... vs)
{
    bool first = true;
    ((out += (first ? "" : ","), out += cell(vs), first = false), ...);
    out += '\n';
}

ordered_json mean_se_json(const MeanSe& m)
{
    return {{"mean", m.mean}, {"se", m.se}, {"count", m.count}};
}

ordered_json point_json(const GridPoint& g)
{
    ordered_json j{{"grid_index", g.index}, {"n", g.n}, {"m", g.m}, {"p", g.p}};
    if (g.beta) j["beta"] = *g.beta;
    return j;
}

ordered_json rational_json(const Rational& r)
{
    return {{"exact", to_string(r)}, {"value", to_double(r)}};
}

}  // namespace

const std::string& support_csv_header()
{
    static const std::string h =
        "grid_index,trial,n,m,p,t,cap,count_below,count_at,count_above,ratio_below,ratio_at,ratio_above,"
        "all_below,none_above,in_y\n";
    return h;
}

const std::string& copy_csv_header()
{
    static const std::string h = "grid_index,trial,n,m,beta,p,vertices,copies\n";
    return h;
}

const std::string& probe_csv_header()
{
    static const std::string h = "grid_index,trial,n,m,beta,p,has_property\n";
    return h;
}

const std::string& theorem3_csv_header()
{
    static const std::string h = "n,p,q,gamma_mean,gamma_se,trials,y_expected,ratio\n";
    return h;
}

std::string support_csv(const std::vector<SupportRecord>& records)
{
    std::string out = support_csv_header();
    for (const auto& r : records)
        row(out, r.grid_index, r.trial, r.n, r.m, r.p, r.t, r.cap, r.count_below, r.count_at, r.count_above,
            r.ratio_below, r.ratio_at, r.ratio_above, r.all_below, r.none_above, r.in_y);
    return out;
}

std::string copy_csv(const std::vector<CopyRecord>& records)
{
    std::string out = copy_csv_header();
    for (const auto& r : records) row(out, r.grid_index, r.trial, r.n, r.m, r.beta, r.p, r.vertices, r.copies);
    return out;
}

std::string probe_csv(const std::vector<ProbeRecord>& records)
{
    std::string out = probe_csv_header();
    for (const auto& r : records) row(out, r.grid_index, r.trial, r.n, r.m, r.beta, r.p, r.has_property);
    return out;
}

std::string theorem3_csv(const std::vector<Theorem3Row>& rows)
{
    std::string out = theorem3_csv_header();
    for (const auto& r : rows) {
        out += cell(r.n) + "," + cell(r.p) + "," + cell(r.q) + "," + cell(r.gamma_copies.mean) + "," +
               cell(r.gamma_copies.se) + "," + cell(r.gamma_copies.count) + "," + cell(r.y_copies) + "," +
               (r.ratio ? cell(*r.ratio) : std::string()) + "\n";
    }
    return out;
}

ordered_json summary_json(const SupportCensusResult& r)
{
    ordered_json pts = ordered_json::array();
    for (const auto& s : r.summary) {
        ordered_json j = point_json(s.point);
        j["t"] = s.t;
        j["q"] = s.q;
        j["ratio_below"] = mean_se_json(s.ratio_below);
        j["ratio_at"] = mean_se_json(s.ratio_at);
        j["ratio_above"] = mean_se_json(s.ratio_above);
        j["fraction_in_y"] = s.fraction_in_y;
        j["z_face"] = s.z_face ? ordered_json(*s.z_face) : ordered_json(nullptr);
        pts.push_back(j);
    }
    return {{"kind", "support_census"}, {"points", pts}};
}

ordered_json summary_json(const CopyCountResult& r)
{
    ordered_json pts = ordered_json::array();
    for (const auto& s : r.summary) {
        ordered_json j = point_json(s.point);
        j["copies"] = mean_se_json(s.copies);
        j["vertices"] = mean_se_json(s.vertices);
        pts.push_back(j);
    }
    return {{"kind", "copy_count"}, {"points", pts}};
}

ordered_json summary_json(const ThresholdProbeResult& r)
{
    ordered_json pts = ordered_json::array();
    for (const auto& s : r.summary) {
        ordered_json j = point_json(s.point);
        j["fraction"] = mean_se_json(s.fraction);
        pts.push_back(j);
    }
    ordered_json pred = ordered_json::array();
    for (const auto& [m, thr] : r.predicted)
        pred.push_back({{"m", m}, {"threshold", thr ? rational_json(*thr) : ordered_json(nullptr)}});
    return {{"kind", "threshold_probe"}, {"points", pts}, {"predicted_threshold", pred}};
}

ordered_json summary_json(const Theorem3Result& r)
{
    const auto& h = r.hypotheses;
    ordered_json hyp{{"pure", h.pure},
                     {"k", h.k},
                     {"x0", h.x0},
                     {"phi", h.phi},
                     {"m_large", h.m_large},
                     {"beta_lower", rational_json(h.beta_lower)},
                     {"beta_in_range", h.beta_in_range},
                     {"all_hold", h.all()}};
    ordered_json rows = ordered_json::array();
    for (const auto& row : r.rows)
        rows.push_back({{"n", row.n},
                        {"p", row.p},
                        {"q", row.q},
                        {"gamma_copies", mean_se_json(row.gamma_copies)},
                        {"y_copies", row.y_copies},
                        {"ratio", row.ratio ? ordered_json(*row.ratio) : ordered_json(nullptr)}});
    return {{"kind", "theorem3_ratio"}, {"hypotheses", hyp}, {"rows", rows}, {"trend", r.trend}};
}

ordered_json exact_json(const ExactComparison& r, bool include_distributions)
{
    ordered_json j{{"n", r.n},   {"m", r.m},   {"k", r.k},   {"p", r.p},
                   {"q", r.q},   {"q_rule", q_rule_name(r.rule)},
                   {"tv", r.tv}, {"gamma_mass_outside_y", r.gamma_mass_outside_y},
                   {"gamma_support", r.gamma.size()}, {"lm_support", r.lm.size()},
                   {"lm_materialized", !r.lm.empty()}};
    if (!r.note.empty()) j["note"] = r.note;
    if (include_distributions) {
        auto dist = [](const Distribution& d) {
            ordered_json a = ordered_json::array();
            for (const auto& [key, pr] : d) a.push_back({{"key", key}, {"prob", pr}});
            return a;
        };
        j["gamma"] = dist(r.gamma);
        j["lm"] = dist(r.lm);
    }
    return j;
}

void write_file_atomic(const std::string& path, const std::string& content)
{
    namespace fs = std::filesystem;
    const fs::path target(path);
    std::error_code ec;
    if (target.has_parent_path()) {
        fs::create_directories(target.parent_path(), ec);
        if (ec) throw IoError("cannot create directory for " + path + ": " + ec.message());
    }
    const fs::path tmp = target.string() + ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            fs::remove(tmp, ec);
            throw IoError("write failed for " + path);
        }
    }
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw IoError("cannot move temp file onto " + path);
    }
}

std::vector<std::string> write_records(const ExperimentConfig& cfg, const std::string& path, const std::string& csv,
                                       const ordered_json& summary)
{
    write_file_atomic(path, csv);
    ordered_json side{{"tool_version", kToolVersion}, {"seed", cfg.seed}, {"config", config_to_json(cfg)},
                      {"summary", summary}};
    const std::string side_path = path + ".json";
    write_file_atomic(side_path, side.dump(2) + "\n");
    return {path, side_path};
}

std::string utc_timestamp()
{
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

ordered_json RunManifest::to_json() const
{
    return {{"tool_version", tool_version}, {"config", config},   {"seed", seed},
            {"started", started},           {"finished", finished}, {"elapsed_seconds", elapsed_seconds},
            {"outputs", outputs}};
}

std::string write_manifest(const RunManifest& manifest, const std::string& path)
{
    const std::string mpath = path + ".manifest.json";
    write_file_atomic(mpath, manifest.to_json().dump(2) + "\n");
    return mpath;
}

}  // namespace nbrcx
