/**
 * @file fault_tolerance.hpp
 * @brief Ping-based liveness, the node connection table and repair of the
 *        coverage graph around failed nodes.
 */

#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string_view>
#include <vector>

#include "sftp/scheduler.hpp"
#include "sftp/topology.hpp"

namespace sftp {

enum class NodeState { Active, Inactive };

std::string_view to_string(NodeState state);

struct NodeStatus {
  NodeId node;
  NodeState state = NodeState::Active;
  /// Tick the response arrived, or the tick the timeout fired.
  Tick resolved_at = 0;

  friend bool operator==(const NodeStatus&, const NodeStatus&) = default;
};

struct PingRecord {
  Tick tick = 0;
  EventKind kind = EventKind::PingReq;
  NodeId node;

  friend bool operator==(const PingRecord&, const PingRecord&) = default;
};

struct PingSweep {
  std::vector<NodeStatus> statuses;  // input order
  std::vector<PingRecord> log;       // dispatch order
  Tick finished_at = 0;

  std::set<NodeId> active() const;
};

/**
 * Pings every node in the origin's component. A request to node n arrives
 * after dist(origin, n) ticks and the response after twice that; a node in
 * `failed` never answers and its timeout fires one tick after the expected
 * round trip. Without an origin every node is swept by an out-of-band
 * monitor one tick away.
 */
PingSweep ping_sweep(const CoverageGraph& graph, const std::set<NodeId>& failed,
                     const std::optional<NodeId>& origin = std::nullopt, Tick start = 0);

struct ConnectionEntry {
  NodeId node;
  std::size_t links = 0;
  std::size_t priority = 0;  // 1 is highest

  friend bool operator==(const ConnectionEntry&, const ConnectionEntry&) = default;
};

class ConnectionTable {
 public:
  ConnectionTable() = default;
  explicit ConnectionTable(std::vector<ConnectionEntry> entries) : entries_(std::move(entries)) {}

  /// Entries in priority order.
  const std::vector<ConnectionEntry>& entries() const noexcept { return entries_; }
  std::optional<std::size_t> priority_of(std::string_view node) const;
  const ConnectionEntry* find(std::string_view node) const;

  friend bool operator==(const ConnectionTable&, const ConnectionTable&) = default;

 private:
  std::vector<ConnectionEntry> entries_;
};

/// Ranks `active` by descending degree in `graph`, ties by label_less.
ConnectionTable build_connection_table(const CoverageGraph& graph, const std::set<NodeId>& active);

struct RepairedEdge {
  NodeId u;
  NodeId v;
  Weight weight = 0;
  NodeId bridged;  // the failed node the edge routes around

  friend bool operator==(const RepairedEdge&, const RepairedEdge&) = default;
};

struct Repair {
  CoverageGraph graph;
  std::vector<RepairedEdge> added;
};

/**
 * Detaches `failed` and chains its live neighbours (those listed in
 * `table`) in priority order. A new link gets the sum of the two removed
 * weights, capped at threshold - 1; an existing link between two chained
 * neighbours is left as is.
 */
Repair repair_failure(const CoverageGraph& graph, const ConnectionTable& table,
                      std::string_view failed);

/// Repairs every failed node, highest degree first (ties by label).
Repair repair_failures(const CoverageGraph& graph, const ConnectionTable& table,
                       const std::set<NodeId>& failed);

}  // namespace sftp
