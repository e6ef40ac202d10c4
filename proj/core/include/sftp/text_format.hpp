#pragma once

#include <span>
#include <string>
#include <string_view>

#include "sftp/fault_tolerance.hpp"
#include "sftp/routing.hpp"
#include "sftp/simulator.hpp"
#include "sftp/topology.hpp"

namespace sftp {

/// Tab-separated matrix with a header row, rows and columns in node order.
std::string format_matrix(const WeightedAdjacency& adj);
/// Inverse of format_matrix. Throws InvalidScenario on malformed text.
WeightedAdjacency parse_matrix(std::string_view text);

/// Aligned "Node / Communication Links / Priority" columns; rows follow
/// `order`, skipping nodes absent from the table.
std::string format_connection_table(const ConnectionTable& table, std::span<const NodeId> order);
/// Inverse of format_connection_table; entries come back in priority order.
ConnectionTable parse_connection_table(std::string_view text);

/// "[S, a, D]"
std::string format_hops(std::span<const NodeId> hops);

/// Human-readable run summary. `color` wraps verdicts in ANSI escapes.
std::string format_report_text(const Report& report, bool color);

}  // namespace sftp
