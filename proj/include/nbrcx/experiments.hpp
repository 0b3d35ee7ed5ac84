#ifndef NBRCX_EXPERIMENTS_HPP
#define NBRCX_EXPERIMENTS_HPP

#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "nbrcx/complex.hpp"
#include "nbrcx/rational.hpp"
#include "nbrcx/regime.hpp"
#include "nbrcx/shape.hpp"

namespace nbrcx {

enum class ExperimentKind { SupportCensus, CopyCount, ThresholdProbe, Theorem3Ratio };
enum class ProbeProperty { ContainsX, AllKFaces, SomeKFace };

const char* kind_name(ExperimentKind k);
ExperimentKind parse_kind(const std::string& s);
const char* property_name(ProbeProperty p);
ProbeProperty parse_property(const std::string& s);

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::SupportCensus;
    std::vector<long long> n;
    std::vector<long long> m;        // empty when a family supplies m
    std::vector<double> p;           // support census only
    std::vector<double> beta;        // p = n^(-1/beta) for the other kinds
    std::optional<Family> family;    // support census over a parameter family
    std::optional<ProbeProperty> property;
    std::size_t k = 0;               // face cardinality for the k-face probes
    FSet x_facets;                   // target complex for copy counts
    std::optional<std::size_t> cap;  // construction cap; default t+2 (census) or the natural one
    std::size_t trials = 1;
    std::uint64_t seed = 0;
    std::string output;
    std::size_t threads = 1;
    std::uint64_t budget = kDefaultBudget;

    friend bool operator==(const ExperimentConfig& a, const ExperimentConfig& b);
};

struct GridPoint {
    std::size_t index = 0;
    long long n = 0;
    long long m = 0;
    double p = 0;
    std::optional<double> beta;
};

/** Grid in canonical order: n outermost, then m, then p (or beta). */
std::vector<GridPoint> expand_grid(const ExperimentConfig& cfg);

/** Stream key for one trial at one grid point. */
inline Seed trial_seed(const ExperimentConfig& cfg, std::size_t grid_index, std::size_t trial)
{
    return Seed{cfg.seed, static_cast<std::uint64_t>(grid_index) * cfg.trials + trial};
}

/**
 * Runs fn(i) for i in [0, count) on up to `threads` workers and returns the
 * results in index order. Each call must depend only on its index. The
 * exception from the lowest failing index is rethrown.
 */
template <typename Fn>
auto run_indexed(std::size_t count, std::size_t threads, Fn&& fn) -> std::vector<decltype(fn(std::size_t{}))>
{
    using R = decltype(fn(std::size_t{}));
    std::vector<std::optional<R>> slots(count);
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                slots[i].emplace(fn(i));
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const std::size_t width = std::max<std::size_t>(1, std::min(threads, count));
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < width; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    std::vector<R> out;
    out.reserve(count);
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

struct MeanSe {
    double mean = 0;
    double se = 0;
    std::size_t count = 0;
};
MeanSe mean_se(const std::vector<double>& xs);

// ---------------------------------------------------------------- support census

struct SupportRecord {
    std::size_t grid_index = 0, trial = 0;
    long long n = 0, m = 0;
    double p = 0;
    long long t = 0;
    std::size_t cap = 0;
    std::uint64_t count_below = 0, count_at = 0, count_above = 0;  // cardinalities t-1, t, t+1
    double ratio_below = 0, ratio_at = 0, ratio_above = 0;
    bool all_below = false, none_above = false, in_y = false;
};

struct SupportSummary {
    GridPoint point;
    long long t = 0;
    double q = 0;
    MeanSe ratio_below, ratio_at, ratio_above;
    double fraction_in_y = 0;
    std::optional<double> z_face;  // (mean ratio at t - q) / se
};

struct SupportCensusResult {
    std::vector<SupportRecord> records;
    std::vector<SupportSummary> summary;
};
SupportCensusResult run_support_census(const ExperimentConfig& cfg);

// ---------------------------------------------------------------- copy counts

struct CopyRecord {
    std::size_t grid_index = 0, trial = 0;
    long long n = 0, m = 0;
    double beta = 0, p = 0;
    std::uint64_t vertices = 0;  // singleton faces of the sampled complex
    std::uint64_t copies = 0;
};

struct CopySummary {
    GridPoint point;
    MeanSe copies;
    MeanSe vertices;
};

struct CopyCountResult {
    std::vector<CopyRecord> records;
    std::vector<CopySummary> summary;
};

/** Relabels an F-set of facets onto 0..x0-1 and closes it into a complex. */
SimplicialComplex complex_from_facets(const FSet& facets);

CopyCountResult run_copy_count_sweep(const ExperimentConfig& cfg);

// ---------------------------------------------------------------- threshold probe

struct ProbeRecord {
    std::size_t grid_index = 0, trial = 0;
    long long n = 0, m = 0;
    double beta = 0, p = 0;
    bool has_property = false;
};

struct ProbeSummary {
    GridPoint point;
    MeanSe fraction;
};

struct ThresholdProbeResult {
    std::vector<ProbeRecord> records;
    std::vector<ProbeSummary> summary;
    /** Predicted threshold per m value: k, mk/(m+k), or b_m(x). */
    std::vector<std::pair<long long, std::optional<Rational>>> predicted;
};
ThresholdProbeResult run_threshold_probe(const ExperimentConfig& cfg);

/** Predicted appearance threshold for the configured property at witness count m. */
std::optional<Rational> predicted_threshold(const ExperimentConfig& cfg, long long m);

// ---------------------------------------------------------------- Theorem-3 ratio

struct Theorem3Hypotheses {
    bool pure = false;
    long long k = 0, x0 = 0, phi = 0;
    bool m_large = false;            // m > k x0 phi
    Rational beta_lower;             // k m phi / (x0 + m phi)
    bool beta_in_range = false;      // k > beta > beta_lower
    bool all() const { return pure && m_large && beta_in_range; }
};
Theorem3Hypotheses theorem3_hypotheses(const FSet& x_facets, long long m, double beta);

/** (n)_{x0} q^phi with q = n^{m(1 - k/beta)}. */
double expected_copies_y(long long n, long long x0, long long phi, long long m, long long k, double beta);

struct Theorem3Row {
    long long n = 0;
    double p = 0, q = 0;
    MeanSe gamma_copies;
    double y_copies = 0;
    std::optional<double> ratio;
};

struct Theorem3Result {
    Theorem3Hypotheses hypotheses;
    std::vector<CopyRecord> records;
    std::vector<Theorem3Row> rows;
    std::string trend;  // qualitative note; convergence is not certified at desk scale
};
Theorem3Result theorem3_ratio_probe(const ExperimentConfig& cfg);

}  // namespace nbrcx

#endif
