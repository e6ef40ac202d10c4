#include "sftp/fault_tolerance.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <utility>

#include "sftp/error.hpp"

namespace sftp {

std::string_view to_string(NodeState state) {
  return state == NodeState::Active ? "Active" : "Inactive";
}

std::set<NodeId> PingSweep::active() const {
  std::set<NodeId> out;
  for (const auto& s : statuses) {
    if (s.state == NodeState::Active) out.insert(s.node);
  }
  return out;
}

namespace {

constexpr Tick kUnreached = std::numeric_limits<Tick>::max();

std::vector<Tick> distances_from(const WeightedAdjacency& adj, std::size_t source) {
  std::vector<Tick> dist(adj.size(), kUnreached);
  using Item = std::pair<Tick, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> frontier;
  dist[source] = 0;
  frontier.emplace(0, source);
  while (!frontier.empty()) {
    auto [d, u] = frontier.top();
    frontier.pop();
    if (d != dist[u]) continue;
    for (std::size_t v : adj.neighbors(u)) {
      const Tick nd = d + adj.weight(u, v);
      if (nd < dist[v]) {
        dist[v] = nd;
        frontier.emplace(nd, v);
      }
    }
  }
  return dist;
}

}  // namespace

PingSweep ping_sweep(const CoverageGraph& graph, const std::set<NodeId>& failed,
                     const std::optional<NodeId>& origin, Tick start) {
  const WeightedAdjacency& adj = graph.base;
  for (const auto& f : failed) adj.index_of(f);

  std::vector<Tick> one_way(adj.size(), 1);
  if (origin) one_way = distances_from(adj, adj.index_of(*origin));

  PingSweep sweep;
  Scheduler sched(start);
  for (std::size_t i = 0; i < adj.size(); ++i) {
    if (one_way[i] == kUnreached) continue;
    const NodeId& node = adj.label(i);
    const bool down = failed.count(node) != 0;
    const Tick rtt = 2 * one_way[i];
    sweep.statuses.push_back(
        {node, down ? NodeState::Inactive : NodeState::Active, start + (down ? rtt + 1 : rtt)});

    sched.schedule(start, EventKind::PingReq, [&sweep, &sched, node] {
      sweep.log.push_back({sched.now(), EventKind::PingReq, node});
    });
    if (down) {
      sched.schedule(start + rtt + 1, EventKind::Timeout, [&sweep, &sched, node] {
        sweep.log.push_back({sched.now(), EventKind::Timeout, node});
      });
    } else {
      sched.schedule(start + rtt, EventKind::PingResp, [&sweep, &sched, node] {
        sweep.log.push_back({sched.now(), EventKind::PingResp, node});
      });
    }
  }
  sched.run();
  sweep.finished_at = sched.now();
  return sweep;
}

std::optional<std::size_t> ConnectionTable::priority_of(std::string_view node) const {
  if (const auto* e = find(node)) return e->priority;
  return std::nullopt;
}

const ConnectionEntry* ConnectionTable::find(std::string_view node) const {
  for (const auto& e : entries_) {
    if (e.node == node) return &e;
  }
  return nullptr;
}

ConnectionTable build_connection_table(const CoverageGraph& graph, const std::set<NodeId>& active) {
  std::vector<ConnectionEntry> entries;
  entries.reserve(active.size());
  for (const auto& node : active) entries.push_back({node, degree(graph, node), 0});
  std::sort(entries.begin(), entries.end(), [](const ConnectionEntry& a, const ConnectionEntry& b) {
    if (a.links != b.links) return a.links > b.links;
    return label_less(a.node, b.node);
  });
  for (std::size_t i = 0; i < entries.size(); ++i) entries[i].priority = i + 1;
  return ConnectionTable(std::move(entries));
}

Repair repair_failure(const CoverageGraph& graph, const ConnectionTable& table,
                      std::string_view failed) {
  Repair out{graph, {}};
  WeightedAdjacency& adj = out.graph.base;
  const std::size_t f = adj.index_of(failed);

  std::vector<std::pair<std::size_t, std::size_t>> live;  // (priority, index)
  for (std::size_t n : adj.neighbors(f)) {
    if (auto p = table.priority_of(adj.label(n))) live.emplace_back(*p, n);
  }
  std::sort(live.begin(), live.end());

  const Weight cap = graph.threshold - 1;
  for (std::size_t k = 0; k + 1 < live.size(); ++k) {
    const std::size_t u = live[k].second;
    const std::size_t v = live[k + 1].second;
    if (adj.linked(u, v)) continue;
    const Weight w = std::min<Weight>(graph.base.weight(u, f) + graph.base.weight(f, v), cap);
    adj.set_link(u, v, w);
    out.added.push_back({adj.label(u), adj.label(v), w, adj.label(f)});
  }
  adj.clear_links(f);
  return out;
}

Repair repair_failures(const CoverageGraph& graph, const ConnectionTable& table,
                       const std::set<NodeId>& failed) {
  std::vector<std::pair<std::size_t, NodeId>> order;
  for (const auto& node : failed) order.emplace_back(degree(graph, node), node);
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return label_less(a.second, b.second);
  });

  Repair out{graph, {}};
  for (const auto& [deg, node] : order) {
    Repair step = repair_failure(out.graph, table, node);
    out.graph = std::move(step.graph);
    out.added.insert(out.added.end(), step.added.begin(), step.added.end());
  }
  return out;
}

}  // namespace sftp
