/**
 * @file routing.hpp
 * @brief Source-routed route discovery by RREQ flooding, hop-acknowledged
 *        data delivery and detection of dropping/delaying relays.
 *
 * Discovery model
 * ---------------
 * Forwarding a message over link (u, v) takes weight(u, v) ticks. Every
 * node broadcasts a request at most once: at the first tick any copy
 * reaches it, it rebroadcasts a single RREQ carrying every identifier list
 * that arrived during that tick (copies that arrive later are suppressed).
 * The destination never rebroadcasts; it records every list that reaches
 * it and answers the first one (label-smallest among simultaneous
 * arrivals) with an RREP sent back along the reversed list.
 */

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string_view>
#include <vector>

#include "sftp/scheduler.hpp"
#include "sftp/topology.hpp"

namespace sftp {

struct Route {
  std::vector<NodeId> hops;
  Tick total_delay = 0;

  bool contains(std::string_view node) const;
  friend bool operator==(const Route&, const Route&) = default;
};

/// Sum of link weights along `hops`. Throws InvalidRoute on a missing link,
/// a repeated node or fewer than two hops.
Tick route_delay(const CoverageGraph& graph, const std::vector<NodeId>& hops);

struct RouteRequest {
  std::uint64_t request_id = 0;
  NodeId source;
  NodeId dest;
  std::vector<NodeId> identifiers;
};

struct RouteReply {
  std::uint64_t request_id = 0;
  std::vector<NodeId> route;  // source first
};

enum class FloodAction {
  Broadcast,  // node rebroadcasts; peers = neighbours reached
  Receive,    // node accepts a copy from peers[0]
  Suppress,   // copy from peers[0] ignored: already forwarded or looped
  Collision,  // copy from peers[0] lost to a same-tick collision
  Record,     // destination records routes
  Reply,      // RREP arrives at node from peers[0]
};

std::string_view to_string(FloodAction action);

struct FloodRecord {
  Tick tick = 0;
  FloodAction action = FloodAction::Broadcast;
  NodeId node;
  std::vector<NodeId> peers;
  std::vector<std::vector<NodeId>> routes;

  friend bool operator==(const FloodRecord&, const FloodRecord&) = default;
};

struct DiscoveryOptions {
  std::uint64_t request_id = 1;
  Tick start = 0;
  /// Probability that same-tick arrivals from two or more senders are all
  /// lost. Unset means collisions are not modelled.
  std::optional<double> collision_probability;
  std::uint64_t seed = 0;
};

struct Discovery {
  RouteRequest request;
  Route primary;                // valid only when found()
  std::vector<Route> recorded;  // arrival order at the destination
  RouteReply reply;
  std::vector<FloodRecord> trace;
  std::optional<Tick> reply_completed;  // RREP back at the source
  Tick finished_at = 0;                 // flood quiescent

  bool found() const noexcept { return !recorded.empty(); }
};

/// Runs the flood to quiescence. Never throws NoRoute; check found().
Discovery flood_route_request(const CoverageGraph& graph, std::string_view source,
                              std::string_view dest, const DiscoveryOptions& options = {});

/// As flood_route_request, but throws NoRoute when the destination is
/// never reached and SameEndpoint when source == dest.
Discovery discover_route(const CoverageGraph& graph, std::string_view source,
                         std::string_view dest, const DiscoveryOptions& options = {});

struct DataPacket {
  std::uint64_t sequence = 0;
  Route route;
  std::uint64_t payload_size = 0;
  Tick send_timestamp = 0;
  /// Receive tick at hops[1], hops[2], ... for every hop reached.
  std::vector<Tick> hop_timestamps;
};

enum class DetectionKind { Dropper, Delayer };

std::string_view to_string(DetectionKind kind);

struct DetectionEvent {
  NodeId node;
  DetectionKind kind = DetectionKind::Dropper;
  std::size_t hop = 0;  // index of `node` in the route
  /// Dropper: upstream send tick / ack deadline / expected ack delay.
  /// Delayer: tick the node received / tick the next hop received / link weight.
  Tick sent_at = 0;
  Tick observed_at = 0;
  Tick expected = 0;

  friend bool operator==(const DetectionEvent&, const DetectionEvent&) = default;
};

enum class DeliveryStatus { Delivered, Dropped };

struct DeliveryOutcome {
  DeliveryStatus status = DeliveryStatus::Delivered;
  DataPacket packet;
  std::optional<DetectionEvent> dropped_at;
  std::vector<DetectionEvent> delayed_at;
  std::optional<Tick> end_to_end_delay;
  Tick finished_at = 0;  // delivery tick, or the ack deadline that fired
};

/// Extra ticks an upstream node waits beyond the 2 * weight ack round trip.
inline constexpr Tick kAckGrace = 1;

/**
 * Walks the packet along its route. A node in `malicious` discards the
 * packet without acknowledging it, which the upstream node notices when
 * its ack deadline of 2 * weight + kAckGrace passes. A node in
 * `delay_factor` holds the packet so that its outgoing hop takes
 * multiplier * weight ticks; the destination flags any hop whose observed
 * latency exceeds twice its weight.
 */
DeliveryOutcome deliver_data(const CoverageGraph& graph, const std::set<NodeId>& malicious,
                             const std::map<NodeId, std::uint32_t>& delay_factor,
                             DataPacket packet);

/// Dropped -> one Dropper event; each flagged delay -> one Delayer event;
/// clean delivery -> empty.
std::vector<DetectionEvent> classify(const DeliveryOutcome& outcome);

/// Earliest recorded route avoiding every excluded node; NoSafeRoute if none.
Route fallback_route(const std::vector<Route>& recorded, const std::set<NodeId>& excluded);

}  // namespace sftp
