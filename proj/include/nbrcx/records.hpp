#ifndef NBRCX_RECORDS_HPP
#define NBRCX_RECORDS_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "nbrcx/exact.hpp"
#include "nbrcx/experiments.hpp"

namespace nbrcx {

/** Shortest round-trip decimal form; identical on every run. */
std::string format_number(double x);

// CSV text, header row first, one record per line in (grid point, trial) order.
std::string support_csv(const std::vector<SupportRecord>& records);
std::string copy_csv(const std::vector<CopyRecord>& records);
std::string probe_csv(const std::vector<ProbeRecord>& records);
std::string theorem3_csv(const std::vector<Theorem3Row>& rows);

const std::string& support_csv_header();
const std::string& copy_csv_header();
const std::string& probe_csv_header();
const std::string& theorem3_csv_header();

nlohmann::ordered_json summary_json(const SupportCensusResult& r);
nlohmann::ordered_json summary_json(const CopyCountResult& r);
nlohmann::ordered_json summary_json(const ThresholdProbeResult& r);
nlohmann::ordered_json summary_json(const Theorem3Result& r);
nlohmann::ordered_json exact_json(const ExactComparison& r, bool include_distributions);

/** Writes via a sibling temp file and rename. IoError names the path. */
void write_file_atomic(const std::string& path, const std::string& content);

/**
 * Writes `path` (CSV) and `path`.json (summary sidecar with config echo and
 * seed). Returns the files written.
 */
std::vector<std::string> write_records(const ExperimentConfig& cfg, const std::string& path, const std::string& csv,
                                       const nlohmann::ordered_json& summary);

struct RunManifest {
    std::string tool_version;
    nlohmann::ordered_json config;
    std::uint64_t seed = 0;
    std::string started, finished;  // ISO-8601 UTC
    double elapsed_seconds = 0;
    std::vector<std::string> outputs;

    nlohmann::ordered_json to_json() const;
};

std::string utc_timestamp();

/** Writes `path`.manifest.json and returns its name. */
std::string write_manifest(const RunManifest& manifest, const std::string& path);

}  // namespace nbrcx

#endif
