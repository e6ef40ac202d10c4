/**
 * @file topology.hpp
 * @brief Weighted adjacency of a MANET and its Wi-Fi coverage graph.
 *
 * Link weights are small integers in abstract range units. The same unit
 * doubles as the propagation delay of a hop, in scheduler ticks.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace sftp {

using NodeId = std::string;
using Weight = std::uint32_t;

/// Largest accepted link weight.
inline constexpr Weight kMaxWeight = 1'000'000;

/**
 * @brief Total order over node labels.
 *
 * Lexicographic over the alphabet a..z < A..Z < any other byte, so
 * lowercase relay names rank ahead of the uppercase endpoint names
 * ("S", "D"). Every tie-break in the simulator uses this order.
 */
bool label_less(std::string_view lhs, std::string_view rhs) noexcept;

struct LabelLess {
  bool operator()(std::string_view lhs, std::string_view rhs) const noexcept {
    return label_less(lhs, rhs);
  }
};

/// Lexicographic order over label sequences, using label_less per element.
bool sequence_less(std::span<const NodeId> lhs, std::span<const NodeId> rhs) noexcept;

/// An undirected link as listed in a scenario. The weight is signed so that
/// non-positive input can be rejected rather than wrapped.
struct Edge {
  NodeId u;
  NodeId v;
  std::int64_t weight = 0;
};

/**
 * @brief Dense symmetric matrix of link weights; 0 means no link.
 *
 * Node order is the order given at construction and is preserved by every
 * operation, so printed matrices line up with their input.
 */
class WeightedAdjacency {
 public:
  WeightedAdjacency() = default;
  explicit WeightedAdjacency(std::vector<NodeId> labels);

  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<NodeId>& labels() const noexcept { return labels_; }
  const NodeId& label(std::size_t index) const { return labels_.at(index); }

  std::optional<std::size_t> find(std::string_view label) const;
  /// Throws Error{UnknownNode} when the label is absent.
  std::size_t index_of(std::string_view label) const;
  bool contains(std::string_view label) const { return find(label).has_value(); }

  Weight weight(std::size_t i, std::size_t j) const { return weights_[i * size() + j]; }
  Weight weight(std::string_view u, std::string_view v) const;
  bool linked(std::size_t i, std::size_t j) const { return weight(i, j) != 0; }

  /// Sets both (i, j) and (j, i). Setting a diagonal entry is an error.
  void set_link(std::size_t i, std::size_t j, Weight w);
  void clear_links(std::size_t i);

  /// Neighbour indices of i in ascending index order.
  std::vector<std::size_t> neighbors(std::size_t i) const;
  std::size_t edge_count() const;
  Weight max_weight() const;

  friend bool operator==(const WeightedAdjacency&, const WeightedAdjacency&) = default;

 private:
  std::vector<NodeId> labels_;
  std::vector<Weight> weights_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Adjacency after thresholding. Every surviving weight is below threshold.
struct CoverageGraph {
  WeightedAdjacency base;
  Weight threshold = 1;

  std::size_t size() const noexcept { return base.size(); }
  friend bool operator==(const CoverageGraph&, const CoverageGraph&) = default;
};

WeightedAdjacency build_adjacency(std::span<const NodeId> nodes, std::span<const Edge> edges);

/// Keeps links with 0 < weight < threshold. Throws InvalidThreshold below 1.
CoverageGraph apply_threshold(const WeightedAdjacency& adj, std::int64_t threshold);
CoverageGraph apply_threshold(const CoverageGraph& graph, std::int64_t threshold);

std::size_t degree(const CoverageGraph& graph, std::string_view node);

/// Components ordered by their first node in input order; members likewise.
std::vector<std::vector<NodeId>> connected_components(const CoverageGraph& graph);

/// Members of the component holding `node`, in input order.
std::vector<NodeId> component_of(const CoverageGraph& graph, std::string_view node);

}  // namespace sftp
