#include "sftp/routing.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <string>
#include <utility>

#include "sftp/error.hpp"

namespace sftp {

bool Route::contains(std::string_view node) const {
  return std::find(hops.begin(), hops.end(), node) != hops.end();
}

Tick route_delay(const CoverageGraph& graph, const std::vector<NodeId>& hops) {
  if (hops.size() < 2) throw Error(Errc::InvalidRoute, "route needs at least two hops");
  std::set<NodeId> seen;
  Tick total = 0;
  for (std::size_t i = 0; i < hops.size(); ++i) {
    if (!graph.base.contains(hops[i])) {
      throw Error(Errc::InvalidRoute, "route node '" + hops[i] + "' is not in the graph");
    }
    if (!seen.insert(hops[i]).second) {
      throw Error(Errc::InvalidRoute, "route visits '" + hops[i] + "' twice");
    }
    if (i == 0) continue;
    const Weight w = graph.base.weight(hops[i - 1], hops[i]);
    if (w == 0) throw Error(Errc::InvalidRoute, "no link " + hops[i - 1] + "-" + hops[i]);
    total += w;
  }
  return total;
}

std::string_view to_string(FloodAction action) {
  switch (action) {
    case FloodAction::Broadcast: return "broadcast";
    case FloodAction::Receive: return "receive";
    case FloodAction::Suppress: return "suppress";
    case FloodAction::Collision: return "collision";
    case FloodAction::Record: return "record";
    case FloodAction::Reply: return "reply";
  }
  return "unknown";
}

std::string_view to_string(DetectionKind kind) {
  return kind == DetectionKind::Dropper ? "Dropper" : "Delayer";
}

namespace {

using IdList = std::vector<NodeId>;

struct Arrival {
  std::size_t from;
  std::vector<IdList> lists;
};

class Flood {
 public:
  Flood(const CoverageGraph& graph, std::size_t source, std::size_t dest,
        const DiscoveryOptions& options)
      : graph_(graph),
        adj_(graph.base),
        source_(source),
        dest_(dest),
        options_(options),
        sched_(options.start),
        rng_(options.seed),
        forwarded_(adj_.size(), false),
        pending_(adj_.size()),
        process_scheduled_(adj_.size(), false) {}

  Discovery run() {
    Discovery out;
    out.request = {options_.request_id, adj_.label(source_), adj_.label(dest_), {adj_.label(source_)}};
    out_ = &out;
    sched_.schedule(options_.start, EventKind::Broadcast,
                    [this] { broadcast(source_, {{adj_.label(source_)}}); });
    sched_.run();
    out.finished_at = sched_.now();
    out_ = nullptr;
    return out;
  }

 private:
  void record(FloodAction action, std::size_t node, std::vector<NodeId> peers,
              std::vector<IdList> routes = {}) {
    out_->trace.push_back({sched_.now(), action, adj_.label(node), std::move(peers), std::move(routes)});
  }

  void broadcast(std::size_t node, std::vector<IdList> lists) {
    forwarded_[node] = true;
    std::vector<NodeId> peers;
    const auto neighbours = adj_.neighbors(node);
    for (std::size_t n : neighbours) peers.push_back(adj_.label(n));
    record(FloodAction::Broadcast, node, std::move(peers), lists);
    for (std::size_t n : neighbours) {
      sched_.schedule_in(adj_.weight(node, n), EventKind::Receive, [this, n, node, lists] {
        pending_[n].push_back({node, lists});
        if (!process_scheduled_[n]) {
          process_scheduled_[n] = true;
          sched_.schedule(sched_.now(), EventKind::Broadcast, [this, n] { process(n); });
        }
      });
    }
  }

  bool collides(const std::vector<Arrival>& arrivals) {
    if (!options_.collision_probability || arrivals.size() < 2) return false;
    // 53-bit uniform draw; spelled out so the stream does not depend on the
    // standard library's distribution implementation.
    const double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    return u < *options_.collision_probability;
  }

  // All copies reaching `node` during the current tick.
  void process(std::size_t node) {
    process_scheduled_[node] = false;
    std::vector<Arrival> arrivals = std::move(pending_[node]);
    pending_[node].clear();

    if (collides(arrivals)) {
      for (const auto& a : arrivals) record(FloodAction::Collision, node, {adj_.label(a.from)}, a.lists);
      return;
    }

    const NodeId& self = adj_.label(node);
    std::vector<IdList> fresh;
    for (const auto& a : arrivals) {
      std::vector<IdList> usable;
      for (const auto& list : a.lists) {
        if (std::find(list.begin(), list.end(), self) == list.end()) usable.push_back(list);
      }
      const bool ignored = usable.empty() || (forwarded_[node] && node != dest_);
      record(ignored ? FloodAction::Suppress : FloodAction::Receive, node, {adj_.label(a.from)}, a.lists);
      if (ignored) continue;
      for (auto& list : usable) {
        list.push_back(self);
        fresh.push_back(std::move(list));
      }
    }
    if (fresh.empty()) return;
    std::sort(fresh.begin(), fresh.end(),
              [](const IdList& a, const IdList& b) { return sequence_less(a, b); });
    fresh.erase(std::unique(fresh.begin(), fresh.end()), fresh.end());

    if (node == dest_) {
      record(FloodAction::Record, node, {}, fresh);
      const bool first = out_->recorded.empty();
      for (auto& list : fresh) {
        const Tick delay = route_delay(graph_, list);
        out_->recorded.push_back({std::move(list), delay});
      }
      if (first) send_reply();
      return;
    }
    broadcast(node, std::move(fresh));
  }

  void send_reply() {
    out_->primary = out_->recorded.front();
    out_->reply = {options_.request_id, out_->primary.hops};
    std::vector<std::size_t> path;
    for (const auto& label : out_->primary.hops) path.push_back(adj_.index_of(label));
    std::reverse(path.begin(), path.end());
    reply_hop(path, 0);
  }

  void reply_hop(const std::vector<std::size_t>& path, std::size_t at) {
    if (at + 1 == path.size()) {
      out_->reply_completed = sched_.now();
      return;
    }
    const std::size_t from = path[at];
    const std::size_t to = path[at + 1];
    sched_.schedule_in(adj_.weight(from, to), EventKind::Receive, [this, path, at, from, to] {
      record(FloodAction::Reply, to, {adj_.label(from)}, {out_->reply.route});
      reply_hop(path, at + 1);
    });
  }

  const CoverageGraph& graph_;
  const WeightedAdjacency& adj_;
  std::size_t source_;
  std::size_t dest_;
  DiscoveryOptions options_;
  Scheduler sched_;
  std::mt19937_64 rng_;
  std::vector<bool> forwarded_;
  std::vector<std::vector<Arrival>> pending_;
  std::vector<bool> process_scheduled_;
  Discovery* out_ = nullptr;
};

}  // namespace

Discovery flood_route_request(const CoverageGraph& graph, std::string_view source,
                              std::string_view dest, const DiscoveryOptions& options) {
  const std::size_t s = graph.base.index_of(source);
  const std::size_t d = graph.base.index_of(dest);
  if (s == d) throw Error(Errc::SameEndpoint, "source and destination are both '" + std::string(source) + "'");
  if (options.collision_probability &&
      !(*options.collision_probability >= 0.0 && *options.collision_probability <= 1.0)) {
    throw Error(Errc::InvalidScenario, "collision probability must lie in [0, 1]");
  }
  return Flood(graph, s, d, options).run();
}

Discovery discover_route(const CoverageGraph& graph, std::string_view source,
                         std::string_view dest, const DiscoveryOptions& options) {
  Discovery out = flood_route_request(graph, source, dest, options);
  if (!out.found()) {
    throw Error(Errc::NoRoute, "no RREQ from '" + std::string(source) + "' reached '" +
                                   std::string(dest) + "'");
  }
  return out;
}

DeliveryOutcome deliver_data(const CoverageGraph& graph, const std::set<NodeId>& malicious,
                             const std::map<NodeId, std::uint32_t>& delay_factor,
                             DataPacket packet) {
  const std::vector<NodeId>& hops = packet.route.hops;
  const Tick expected_total = route_delay(graph, hops);
  for (const auto& end : {hops.front(), hops.back()}) {
    if (malicious.count(end) || delay_factor.count(end)) {
      throw Error(Errc::InvalidScenario, "route endpoint '" + end + "' is marked as an attacker");
    }
  }
  packet.route.total_delay = expected_total;
  packet.hop_timestamps.clear();

  const std::size_t last = hops.size() - 1;
  auto link = [&](std::size_t i) -> Tick { return graph.base.weight(hops[i], hops[i + 1]); };

  DeliveryOutcome out;
  Scheduler sched(packet.send_timestamp);
  std::vector<bool> acked(last, false);
  bool done = false;

  // Hop i carries the packet from hops[i] to hops[i + 1].
  std::function<void(std::size_t, Tick)> transmit = [&](std::size_t i, Tick at) {
    const Tick w = link(i);
    const Tick deadline = at + 2 * w + kAckGrace;
    sched.schedule(at + w, EventKind::Receive, [&, i, w] {
      const std::size_t next = i + 1;
      packet.hop_timestamps.push_back(sched.now());
      if (malicious.count(hops[next])) return;  // silently discarded, no ack
      sched.schedule_in(w, EventKind::Ack, [&acked, i] { acked[i] = true; });
      if (next == last) {
        out.status = DeliveryStatus::Delivered;
        out.finished_at = sched.now();
        done = true;
        return;
      }
      Tick hold = 0;
      if (auto it = delay_factor.find(hops[next]); it != delay_factor.end() && it->second > 1) {
        hold = static_cast<Tick>(it->second - 1) * link(next);
      }
      transmit(next, sched.now() + hold);
    });
    sched.schedule(deadline, EventKind::Timeout, [&, i, at, deadline, w] {
      if (acked[i] || done) return;
      done = true;
      out.status = DeliveryStatus::Dropped;
      out.finished_at = sched.now();
      out.dropped_at = DetectionEvent{hops[i + 1], DetectionKind::Dropper, i + 1, at, deadline, 2 * w + kAckGrace};
    });
  };
  transmit(0, packet.send_timestamp);
  sched.run();

  if (out.status == DeliveryStatus::Delivered) {
    const auto& ts = packet.hop_timestamps;
    out.end_to_end_delay = ts.back() - packet.send_timestamp;
    for (std::size_t i = 1; i < last; ++i) {
      const Tick observed = ts[i] - ts[i - 1];  // hops[i] -> hops[i + 1]
      const Tick expected = link(i);
      if (observed > 2 * expected) {
        out.delayed_at.push_back({hops[i], DetectionKind::Delayer, i, ts[i - 1], ts[i], expected});
      }
    }
  }
  out.packet = std::move(packet);
  return out;
}

std::vector<DetectionEvent> classify(const DeliveryOutcome& outcome) {
  std::vector<DetectionEvent> events;
  if (outcome.dropped_at) events.push_back(*outcome.dropped_at);
  events.insert(events.end(), outcome.delayed_at.begin(), outcome.delayed_at.end());
  return events;
}

Route fallback_route(const std::vector<Route>& recorded, const std::set<NodeId>& excluded) {
  for (const Route& r : recorded) {
    const bool safe = std::none_of(r.hops.begin(), r.hops.end(),
                                   [&](const NodeId& n) { return excluded.count(n) != 0; });
    if (safe) return r;
  }
  throw Error(Errc::NoSafeRoute, "every recorded route crosses an excluded node");
}

}  // namespace sftp
