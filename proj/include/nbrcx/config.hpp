#ifndef NBRCX_CONFIG_HPP
#define NBRCX_CONFIG_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nbrcx/experiments.hpp"

namespace nbrcx {

struct ParsedConfig {
    ExperimentConfig config;
    std::vector<std::string> warnings;
};

/**
 * Builds a validated config from an optional file object and a flag object.
 * Both use the same strict schema; keys present in both take the flag value
 * and produce a warning. A single support-census point without "cap" gets
 * cap = t + 2.
 *
 * Keys: kind, n, m, p, beta, family {p_rule, m_rule}, property, k, x, cap,
 * trials, seed, output, threads, budget. Grid keys accept a scalar or a list.
 */
ParsedConfig parse_config(const std::optional<nlohmann::json>& file, const nlohmann::json& flags);

/** Reads and parses a JSON file; IoError if unreadable, ConfigError if malformed. */
nlohmann::json load_json_file(const std::string& path);

ParsedConfig parse_config_file(const std::string& path, const nlohmann::json& flags = nlohmann::json::object());

/** Full echo of a config; parse_config(nullopt, config_to_json(c)) reproduces c. */
nlohmann::ordered_json config_to_json(const ExperimentConfig& cfg);

/** Prefixes relative paths with $NBRCX_OUTPUT_DIR when it is set and nonempty. */
std::string resolve_output_path(const std::string& path);

}  // namespace nbrcx

#endif
