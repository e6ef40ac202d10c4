#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "sftp/simulator.hpp"

namespace sftp {

/**
 * Scenario document:
 *
 *   { "nodes": ["S", "a", "D"], "edges": [["S", "a", 1], ["a", "D", 2]],
 *     "threshold": 4, "source": "S", "dest": "D",
 *     "failed": [], "malicious": [], "delayers": {"a": 3},
 *     "packet_count": 1, "payload_size": 100,
 *     "collision_mode": "off" | {"on": 0.25}, "seed": 0 }
 *
 * nodes, edges, threshold, source and dest are required. Unknown keys are
 * rejected. Errors are Error{InvalidScenario} whose message names the line
 * and column (syntax) or the offending field (schema).
 */
Scenario parse_scenario(std::string_view text);

/// Throws IoError when the file cannot be read.
Scenario load_scenario(const std::filesystem::path& path);

nlohmann::ordered_json scenario_to_json(const Scenario& scenario);

/// Report with a fixed key order.
nlohmann::ordered_json report_to_json(const Report& report);

/// Two-space indented document with a trailing newline.
std::string dump_json(const nlohmann::ordered_json& doc);

/// Throws IoError when the file cannot be written.
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace sftp
