/**
 * @file simulator.hpp
 * @brief End-to-end scenario runner and delivery metrics.
 *
 * A run executes the phases in order on one simulated clock:
 *   threshold -> components -> ping sweep -> connection table -> repair ->
 *   route discovery -> data delivery with detection and fallback.
 * Each phase starts at the tick the previous one went quiet. Seeded
 * randomness is only consumed by the optional collision model.
 */

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "sftp/error.hpp"
#include "sftp/fault_tolerance.hpp"
#include "sftp/routing.hpp"
#include "sftp/topology.hpp"

namespace sftp {

struct CollisionMode {
  bool enabled = false;
  double probability = 0.0;

  friend bool operator==(const CollisionMode&, const CollisionMode&) = default;
};

struct Scenario {
  std::vector<NodeId> nodes;
  std::vector<Edge> edges;
  std::int64_t threshold = 0;
  NodeId source;
  NodeId dest;
  std::set<NodeId> failed;
  std::set<NodeId> malicious;
  std::map<NodeId, std::uint32_t> delayers;  // node -> latency multiplier
  std::uint64_t packet_count = 1;
  std::uint64_t payload_size = 100;  // bytes
  CollisionMode collision;
  std::uint64_t seed = 0;
};

/// Throws Error (InvalidScenario, UnknownNode, or a topology error).
void validate(const Scenario& scenario);

/// One transmission of a payload along one route.
struct Attempt {
  Route route;
  DeliveryStatus status = DeliveryStatus::Delivered;
  Tick sent_at = 0;
  Tick finished_at = 0;
  std::vector<Tick> hop_timestamps;
  std::optional<Tick> end_to_end_delay;
  std::vector<DetectionEvent> detections;
};

struct PacketOutcome {
  std::uint64_t sequence = 0;
  std::uint64_t payload_size = 0;
  std::vector<Attempt> attempts;
  bool delivered = false;
  std::optional<Tick> end_to_end_delay;
  std::optional<Errc> failure;  // NoRoute or NoSafeRoute when undelivered
};

struct Metrics {
  std::uint64_t packets_sent = 0;  // unique payloads
  std::uint64_t packets_delivered = 0;
  std::uint64_t transmissions = 0;  // attempts, retransmissions included
  std::uint64_t retransmissions = 0;
  Tick clock = 0;
  std::optional<double> end_to_end_delay;      // mean over delivered payloads
  std::optional<double> packet_delivery_rate;  // absent when nothing was sent
  double throughput = 0.0;                     // delivered bytes per tick
};

/// `clock` is the length of the data phase in ticks.
Metrics compute_metrics(std::span<const PacketOutcome> outcomes, Tick clock);

enum class RunOutcome { Delivered, NoRoute, NoSafeRoute };

std::string_view to_string(RunOutcome outcome);

struct Detection {
  std::uint64_t sequence = 0;
  DetectionEvent event;
};

struct PhaseSpan {
  Tick start = 0;
  Tick end = 0;
};

struct Report {
  std::vector<NodeId> nodes;  // scenario order
  NodeId source;
  NodeId dest;
  std::uint64_t seed = 0;
  CoverageGraph coverage;
  std::vector<std::vector<NodeId>> components;
  std::vector<NodeId> unreachable;
  PingSweep ping;
  ConnectionTable table;
  std::vector<RepairedEdge> repaired;
  CoverageGraph routing_graph;  // coverage after repair
  Discovery discovery;
  std::vector<Detection> detections;
  std::set<NodeId> excluded;
  std::vector<PacketOutcome> packets;
  Metrics metrics;
  RunOutcome outcome = RunOutcome::Delivered;
  PhaseSpan ping_phase;
  PhaseSpan discovery_phase;
  PhaseSpan data_phase;
};

enum class RunPhases { ThroughDiscovery, All };

/**
 * Runs every phase, or stops after route discovery. Rejects invalid
 * scenarios by throwing; NoRoute and NoSafeRoute are reported through
 * Report::outcome and the per-packet failures, with metrics still computed.
 */
Report run_scenario(const Scenario& scenario, RunPhases phases = RunPhases::All);

}  // namespace sftp
