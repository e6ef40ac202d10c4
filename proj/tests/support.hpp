// Shared fixtures and brute-force oracles for the test suites. Nothing in
// here calls into the routing or component code it is used to check.
#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "sftp/simulator.hpp"
#include "sftp/topology.hpp"

namespace sftp::test {

inline const std::vector<NodeId> kExampleNodes = {"a", "b", "c", "d", "e", "f", "g", "h",
                                                "i", "j", "k", "l", "m", "S", "D"};

// Adjacency matrix of the worked example, row/column order as kExampleNodes.
inline const std::vector<std::vector<Weight>> kRawMatrix = {
    {0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0},
    {0, 0, 2, 0, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
    {1, 2, 0, 2, 0, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0},
    {0, 0, 2, 0, 0, 0, 2, 0, 0, 0, 0, 0, 0, 0, 0},
    {0, 2, 0, 0, 0, 2, 0, 3, 0, 0, 0, 0, 0, 0, 0},
    {0, 0, 2, 0, 2, 0, 2, 0, 0, 0, 0, 0, 0, 0, 0},
    {0, 0, 0, 2, 0, 2, 0, 0, 1, 0, 0, 0, 0, 0, 0},
    {0, 0, 0, 0, 3, 0, 0, 0, 0, 0, 0, 0, 0, 0, 3},
    {0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1},
    {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 4, 0, 0, 0, 0},
    {0, 0, 0, 0, 0, 0, 0, 0, 0, 4, 0, 1, 0, 0, 4},
    {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 3, 0, 0},
    {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 3, 0, 0, 0},
    {1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
    {0, 0, 0, 0, 0, 0, 0, 3, 1, 0, 4, 0, 0, 0, 0},
};

// Updated matrix after thresholding at 4.
inline const std::vector<std::vector<Weight>> kThresholdedMatrix = {
    {0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0},
    {0, 0, 2, 0, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
    {1, 2, 0, 2, 0, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0},
    {0, 0, 2, 0, 0, 0, 2, 0, 0, 0, 0, 0, 0, 0, 0},
    {0, 2, 0, 0, 0, 2, 0, 3, 0, 0, 0, 0, 0, 0, 0},
    {0, 0, 2, 0, 2, 0, 2, 0, 0, 0, 0, 0, 0, 0, 0},
    {0, 0, 0, 2, 0, 2, 0, 0, 1, 0, 0, 0, 0, 0, 0},
    {0, 0, 0, 0, 3, 0, 0, 0, 0, 0, 0, 0, 0, 0, 3},
    {0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1},
    {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
    {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0},
    {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 3, 0, 0},
    {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 3, 0, 0, 0},
    {1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
    {0, 0, 0, 0, 0, 0, 0, 3, 1, 0, 0, 0, 0, 0, 0},
};

inline std::vector<Edge> example_edges() {
  return {{"a", "c", 1}, {"a", "S", 1}, {"b", "c", 2}, {"b", "e", 2}, {"c", "d", 2}, {"c", "f", 2},
          {"d", "g", 2}, {"e", "f", 2}, {"e", "h", 3}, {"f", "g", 2}, {"g", "i", 1}, {"h", "D", 3},
          {"i", "D", 1}, {"j", "k", 4}, {"k", "l", 1}, {"k", "D", 4}, {"l", "m", 3}};
}

inline WeightedAdjacency example_adjacency() { return build_adjacency(kExampleNodes, example_edges()); }
inline CoverageGraph example_coverage() { return apply_threshold(example_adjacency(), 4); }

inline Scenario example_scenario() {
  Scenario s;
  s.nodes = kExampleNodes;
  s.edges = example_edges();
  s.threshold = 4;
  s.source = "S";
  s.dest = "D";
  s.malicious = {"d"};
  s.packet_count = 1;
  s.payload_size = 100;
  return s;
}

inline std::vector<std::vector<Weight>> dense(const WeightedAdjacency& adj) {
  std::vector<std::vector<Weight>> m(adj.size(), std::vector<Weight>(adj.size()));
  for (std::size_t i = 0; i < adj.size(); ++i)
    for (std::size_t j = 0; j < adj.size(); ++j) m[i][j] = adj.weight(i, j);
  return m;
}

// --- independent label order: a..z, then A..Z, then other bytes ----------

inline int oracle_rank(char c) {
  const std::string alphabet = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";
  const auto pos = alphabet.find(c);
  return pos == std::string::npos ? 100 + static_cast<unsigned char>(c) : static_cast<int>(pos);
}

inline bool oracle_label_less(const std::string& a, const std::string& b) {
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
    if (a[i] != b[i]) return oracle_rank(a[i]) < oracle_rank(b[i]);
  }
  return a.size() < b.size();
}

inline bool oracle_path_less(const std::vector<NodeId>& a, const std::vector<NodeId>& b) {
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
    if (a[i] != b[i]) return oracle_label_less(a[i], b[i]);
  }
  return a.size() < b.size();
}

// --- brute-force reachability over the raw matrix --------------------------

inline bool reachable(const std::vector<std::vector<Weight>>& m, std::size_t from, std::size_t to) {
  std::vector<bool> seen(m.size(), false);
  std::vector<std::size_t> frontier{from};
  seen[from] = true;
  while (!frontier.empty()) {
    std::vector<std::size_t> next;
    for (std::size_t u : frontier) {
      for (std::size_t v = 0; v < m.size(); ++v) {
        if (m[u][v] != 0 && !seen[v]) {
          seen[v] = true;
          next.push_back(v);
        }
      }
    }
    frontier = std::move(next);
  }
  return seen[to];
}

// --- exhaustive simple-path enumeration ------------------------------------

struct EnumeratedPath {
  std::vector<NodeId> hops;
  Tick delay = 0;
};

inline void enumerate_from(const WeightedAdjacency& adj, std::size_t u, std::size_t dest,
                           std::vector<bool>& on_path, std::vector<std::size_t>& path, Tick delay,
                           std::vector<EnumeratedPath>& out) {
  if (u == dest) {
    EnumeratedPath p;
    for (std::size_t i : path) p.hops.push_back(adj.label(i));
    p.delay = delay;
    out.push_back(std::move(p));
    return;
  }
  for (std::size_t v = 0; v < adj.size(); ++v) {
    const Weight w = adj.weight(u, v);
    if (w == 0 || on_path[v]) continue;
    on_path[v] = true;
    path.push_back(v);
    enumerate_from(adj, v, dest, on_path, path, delay + w, out);
    path.pop_back();
    on_path[v] = false;
  }
}

inline std::vector<EnumeratedPath> all_simple_paths(const WeightedAdjacency& adj, const NodeId& s,
                                                    const NodeId& d) {
  std::vector<EnumeratedPath> out;
  const std::size_t si = adj.index_of(s);
  std::vector<bool> on_path(adj.size(), false);
  std::vector<std::size_t> path{si};
  on_path[si] = true;
  enumerate_from(adj, si, adj.index_of(d), on_path, path, 0, out);
  return out;
}

// Minimum delay, ties broken by label order over the whole sequence.
inline EnumeratedPath best_path(const std::vector<EnumeratedPath>& paths) {
  return *std::min_element(paths.begin(), paths.end(), [](const auto& a, const auto& b) {
    if (a.delay != b.delay) return a.delay < b.delay;
    return oracle_path_less(a.hops, b.hops);
  });
}

// --- random topologies -----------------------------------------------------

// Connected graph on n nodes (random spanning tree plus extra links) with
// weights in [1, max_weight]. Labels are distinct single letters of mixed
// case so the label order is exercised.
inline Scenario random_connected(std::mt19937_64& rng, std::size_t n, Weight max_weight = 4,
                                 double extra_edge_p = 0.35) {
  std::string letters = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";
  std::shuffle(letters.begin(), letters.end(), rng);
  Scenario s;
  for (std::size_t i = 0; i < n; ++i) s.nodes.push_back(std::string(1, letters[i]));
  std::uniform_int_distribution<Weight> weight(1, max_weight);
  std::bernoulli_distribution extra(extra_edge_p);
  std::set<std::pair<std::size_t, std::size_t>> used;
  for (std::size_t i = 1; i < n; ++i) {
    std::uniform_int_distribution<std::size_t> parent(0, i - 1);
    const std::size_t p = parent(rng);
    used.emplace(p, i);
    s.edges.push_back({s.nodes[p], s.nodes[i], weight(rng)});
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!used.count({i, j}) && extra(rng)) {
        used.emplace(i, j);
        s.edges.push_back({s.nodes[i], s.nodes[j], weight(rng)});
      }
    }
  }
  s.threshold = static_cast<std::int64_t>(max_weight) + 1;
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  const std::size_t src = pick(rng);
  std::size_t dst = pick(rng);
  while (dst == src) dst = pick(rng);
  s.source = s.nodes[src];
  s.dest = s.nodes[dst];
  return s;
}

}  // namespace sftp::test
