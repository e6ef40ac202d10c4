#include "sftp/topology.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "sftp/error.hpp"

namespace sftp {

namespace {

int label_rank(unsigned char c) noexcept {
  if (c >= 'a' && c <= 'z') return c - 'a';
  if (c >= 'A' && c <= 'Z') return 26 + (c - 'A');
  return 52 + c;
}

}  // namespace

bool label_less(std::string_view lhs, std::string_view rhs) noexcept {
  return std::lexicographical_compare(
      lhs.begin(), lhs.end(), rhs.begin(), rhs.end(), [](char a, char b) {
        return label_rank(static_cast<unsigned char>(a)) < label_rank(static_cast<unsigned char>(b));
      });
}

bool sequence_less(std::span<const NodeId> lhs, std::span<const NodeId> rhs) noexcept {
  return std::lexicographical_compare(lhs.begin(), lhs.end(), rhs.begin(), rhs.end(),
                                      [](const NodeId& a, const NodeId& b) { return label_less(a, b); });
}

WeightedAdjacency::WeightedAdjacency(std::vector<NodeId> labels)
    : labels_(std::move(labels)), weights_(labels_.size() * labels_.size(), 0) {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i].empty()) throw Error(Errc::InvalidScenario, "empty node label");
    if (!index_.emplace(labels_[i], i).second) {
      throw Error(Errc::DuplicateNode, "node '" + labels_[i] + "' listed twice");
    }
  }
}

std::optional<std::size_t> WeightedAdjacency::find(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t WeightedAdjacency::index_of(std::string_view label) const {
  if (auto i = find(label)) return *i;
  throw Error(Errc::UnknownNode, "node '" + std::string(label) + "' is not in the graph");
}

Weight WeightedAdjacency::weight(std::string_view u, std::string_view v) const {
  return weight(index_of(u), index_of(v));
}

void WeightedAdjacency::set_link(std::size_t i, std::size_t j, Weight w) {
  if (i == j) throw Error(Errc::SelfLoop, "self-loop on '" + labels_.at(i) + "'");
  weights_.at(i * size() + j) = w;
  weights_.at(j * size() + i) = w;
}

void WeightedAdjacency::clear_links(std::size_t i) {
  for (std::size_t j = 0; j < size(); ++j) {
    if (i != j) set_link(i, j, 0);
  }
}

std::vector<std::size_t> WeightedAdjacency::neighbors(std::size_t i) const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < size(); ++j) {
    if (linked(i, j)) out.push_back(j);
  }
  return out;
}

std::size_t WeightedAdjacency::edge_count() const {
  std::size_t count = 0;
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = i + 1; j < size(); ++j) {
      if (linked(i, j)) ++count;
    }
  }
  return count;
}

Weight WeightedAdjacency::max_weight() const {
  return weights_.empty() ? 0 : *std::max_element(weights_.begin(), weights_.end());
}

WeightedAdjacency build_adjacency(std::span<const NodeId> nodes, std::span<const Edge> edges) {
  WeightedAdjacency adj(std::vector<NodeId>(nodes.begin(), nodes.end()));
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const Edge& e : edges) {
    const std::size_t u = adj.index_of(e.u);
    const std::size_t v = adj.index_of(e.v);
    if (u == v) throw Error(Errc::SelfLoop, "edge " + e.u + "-" + e.v + " is a self-loop");
    if (e.weight <= 0) {
      throw Error(Errc::NonPositiveWeight,
                  "edge " + e.u + "-" + e.v + " has weight " + std::to_string(e.weight));
    }
    if (e.weight > static_cast<std::int64_t>(kMaxWeight)) {
      throw Error(Errc::WeightOutOfRange,
                  "edge " + e.u + "-" + e.v + " has weight " + std::to_string(e.weight));
    }
    if (!seen.emplace(std::min(u, v), std::max(u, v)).second) {
      throw Error(Errc::DuplicateEdge, "edge " + e.u + "-" + e.v + " listed twice");
    }
    adj.set_link(u, v, static_cast<Weight>(e.weight));
  }
  return adj;
}

CoverageGraph apply_threshold(const WeightedAdjacency& adj, std::int64_t threshold) {
  if (threshold < 1 || threshold > static_cast<std::int64_t>(kMaxWeight) + 1) {
    throw Error(Errc::InvalidThreshold, "threshold " + std::to_string(threshold) + " out of range");
  }
  CoverageGraph out{adj, static_cast<Weight>(threshold)};
  for (std::size_t i = 0; i < adj.size(); ++i) {
    for (std::size_t j = i + 1; j < adj.size(); ++j) {
      if (adj.weight(i, j) >= out.threshold) out.base.set_link(i, j, 0);
    }
  }
  return out;
}

CoverageGraph apply_threshold(const CoverageGraph& graph, std::int64_t threshold) {
  return apply_threshold(graph.base, threshold);
}

std::size_t degree(const CoverageGraph& graph, std::string_view node) {
  return graph.base.neighbors(graph.base.index_of(node)).size();
}

namespace {

std::vector<std::size_t> component_labels(const WeightedAdjacency& adj) {
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> comp(adj.size(), kUnset);
  std::size_t next = 0;
  for (std::size_t start = 0; start < adj.size(); ++start) {
    if (comp[start] != kUnset) continue;
    std::vector<std::size_t> stack{start};
    comp[start] = next;
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t v : adj.neighbors(u)) {
        if (comp[v] == kUnset) {
          comp[v] = next;
          stack.push_back(v);
        }
      }
    }
    ++next;
  }
  return comp;
}

}  // namespace

std::vector<std::vector<NodeId>> connected_components(const CoverageGraph& graph) {
  const auto comp = component_labels(graph.base);
  std::vector<std::vector<NodeId>> out;
  for (std::size_t i = 0; i < comp.size(); ++i) {
    if (comp[i] >= out.size()) out.resize(comp[i] + 1);
    out[comp[i]].push_back(graph.base.label(i));
  }
  return out;
}

std::vector<NodeId> component_of(const CoverageGraph& graph, std::string_view node) {
  const std::size_t root = graph.base.index_of(node);
  const auto comp = component_labels(graph.base);
  std::vector<NodeId> out;
  for (std::size_t i = 0; i < comp.size(); ++i) {
    if (comp[i] == comp[root]) out.push_back(graph.base.label(i));
  }
  return out;
}

}  // namespace sftp
