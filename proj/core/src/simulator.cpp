#include "sftp/simulator.hpp"

#include <algorithm>
#include <string>
#include <utility>

namespace sftp {

std::string_view to_string(RunOutcome outcome) {
  switch (outcome) {
    case RunOutcome::Delivered: return "delivered";
    case RunOutcome::NoRoute: return "no_route";
    case RunOutcome::NoSafeRoute: return "no_safe_route";
  }
  return "unknown";
}

void validate(const Scenario& s) {
  // Construction checks labels, edges and weights.
  const WeightedAdjacency adj = build_adjacency(s.nodes, s.edges);
  if (s.threshold < 1) {
    throw Error(Errc::InvalidThreshold, "threshold must be at least 1, got " + std::to_string(s.threshold));
  }
  adj.index_of(s.source);
  adj.index_of(s.dest);
  if (s.source == s.dest) throw Error(Errc::SameEndpoint, "source and dest are both '" + s.source + "'");

  auto check_member = [&](const NodeId& n, const char* what) {
    adj.index_of(n);
    if (n == s.source || n == s.dest) {
      throw Error(Errc::InvalidScenario, std::string(what) + " contains endpoint '" + n + "'");
    }
  };
  for (const auto& n : s.failed) check_member(n, "failed");
  for (const auto& n : s.malicious) check_member(n, "malicious");
  for (const auto& [n, factor] : s.delayers) {
    check_member(n, "delayers");
    if (factor < 1) throw Error(Errc::InvalidScenario, "delay multiplier for '" + n + "' must be >= 1");
  }
  if (s.collision.enabled && !(s.collision.probability >= 0.0 && s.collision.probability <= 1.0)) {
    throw Error(Errc::InvalidScenario, "collision probability must lie in [0, 1]");
  }
}

Metrics compute_metrics(std::span<const PacketOutcome> outcomes, Tick clock) {
  Metrics m;
  m.clock = clock;
  std::uint64_t delivered_bytes = 0;
  Tick delay_sum = 0;
  for (const auto& p : outcomes) {
    ++m.packets_sent;
    m.transmissions += p.attempts.size();
    if (p.attempts.size() > 1) m.retransmissions += p.attempts.size() - 1;
    if (p.delivered) {
      ++m.packets_delivered;
      delivered_bytes += p.payload_size;
      delay_sum += p.end_to_end_delay.value_or(0);
    }
  }
  if (m.packets_sent > 0) {
    m.packet_delivery_rate = static_cast<double>(m.packets_delivered) / static_cast<double>(m.packets_sent);
  }
  if (m.packets_delivered > 0) {
    m.end_to_end_delay = static_cast<double>(delay_sum) / static_cast<double>(m.packets_delivered);
  }
  if (clock > 0) m.throughput = static_cast<double>(delivered_bytes) / static_cast<double>(clock);
  return m;
}

Report run_scenario(const Scenario& s, RunPhases phases) {
  validate(s);

  Report r;
  r.nodes = s.nodes;
  r.source = s.source;
  r.dest = s.dest;
  r.seed = s.seed;
  r.coverage = apply_threshold(build_adjacency(s.nodes, s.edges), s.threshold);
  r.components = connected_components(r.coverage);
  const auto reachable = component_of(r.coverage, s.source);
  for (const auto& n : s.nodes) {
    if (std::find(reachable.begin(), reachable.end(), n) == reachable.end()) r.unreachable.push_back(n);
  }

  r.ping = ping_sweep(r.coverage, s.failed, s.source, 0);
  r.ping_phase = {0, r.ping.finished_at};
  r.table = build_connection_table(r.coverage, r.ping.active());
  Repair repair = repair_failures(r.coverage, r.table, s.failed);
  r.routing_graph = std::move(repair.graph);
  r.repaired = std::move(repair.added);

  DiscoveryOptions options;
  options.start = r.ping_phase.end;
  options.seed = s.seed;
  if (s.collision.enabled) options.collision_probability = s.collision.probability;
  r.discovery = flood_route_request(r.routing_graph, s.source, s.dest, options);
  r.discovery_phase = {options.start, r.discovery.finished_at};

  const Tick data_start = r.discovery_phase.end;
  if (phases == RunPhases::ThroughDiscovery) {
    r.data_phase = {data_start, data_start};
    r.outcome = r.discovery.found() ? RunOutcome::Delivered : RunOutcome::NoRoute;
    return r;
  }
  Tick now = data_start;
  std::optional<Route> current;
  if (r.discovery.found()) current = r.discovery.primary;
  Errc failure = r.discovery.found() ? Errc::NoSafeRoute : Errc::NoRoute;

  for (std::uint64_t seq = 1; seq <= s.packet_count; ++seq) {
    PacketOutcome packet{seq, s.payload_size, {}, false, std::nullopt, std::nullopt};
    while (current) {
      DataPacket data{seq, *current, s.payload_size, now, {}};
      DeliveryOutcome out = deliver_data(r.routing_graph, s.malicious, s.delayers, std::move(data));
      now = out.finished_at;

      Attempt attempt{out.packet.route, out.status, out.packet.send_timestamp, out.finished_at,
                      out.packet.hop_timestamps, out.end_to_end_delay, classify(out)};
      for (const auto& e : attempt.detections) r.detections.push_back({seq, e});
      packet.attempts.push_back(std::move(attempt));

      if (out.status == DeliveryStatus::Delivered) {
        packet.delivered = true;
        packet.end_to_end_delay = out.end_to_end_delay;
        break;
      }
      r.excluded.insert(out.dropped_at->node);
      try {
        current = fallback_route(r.discovery.recorded, r.excluded);
      } catch (const Error&) {
        current.reset();
      }
    }
    if (!packet.delivered) packet.failure = failure;
    r.packets.push_back(std::move(packet));
  }

  r.data_phase = {data_start, now};
  r.metrics = compute_metrics(r.packets, now - data_start);
  r.outcome = RunOutcome::Delivered;
  for (const auto& p : r.packets) {
    if (!p.delivered) r.outcome = failure == Errc::NoRoute ? RunOutcome::NoRoute : RunOutcome::NoSafeRoute;
  }
  return r;
}

}  // namespace sftp
