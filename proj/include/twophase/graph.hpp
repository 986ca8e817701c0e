#pragma once

// Social graph storage, node economics and node-exclusion views.
//
// Nodes are dense 0-based ids. Arcs are stored in CSR order (grouped by
// source, adjacency order = first-occurrence order of the input edges), so an
// arc has a stable global index that the diffusion kernels use as the
// counter for per-world coin flips.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace twophase {

using NodeId = std::uint32_t;
using ArcId = std::uint32_t;
// Incentive cost and benefit are integers (units of money).
using Cost = std::int64_t;
using Benefit = std::int64_t;

enum class Directedness { kDirected, kUndirected };

struct Edge {
  NodeId source = 0;
  NodeId target = 0;
  double probability = 0.0;
};

struct Arc {
  NodeId source;
  NodeId target;
  double probability;

  friend bool operator==(const Arc&, const Arc&) = default;
};

struct BuildStats {
  std::size_t input_edges = 0;
  std::size_t duplicate_edges = 0;  // collapsed, first occurrence kept
};

// Maps a probability in (0,1] to the inclusive 32-bit threshold used by the
// coin kernels: an arc is live iff hash <= threshold.
std::uint32_t probability_threshold(double probability);

class SocialGraph {
 public:
  SocialGraph() = default;

  std::size_t node_count() const { return node_count_; }
  std::size_t arc_count() const { return targets_.size(); }
  bool directed() const { return directedness_ == Directedness::kDirected; }
  Directedness directedness() const { return directedness_; }

  ArcId first_arc(NodeId u) const { return offsets_[u]; }
  ArcId end_arc(NodeId u) const { return offsets_[u + 1]; }
  std::size_t out_degree(NodeId u) const { return offsets_[u + 1] - offsets_[u]; }

  std::span<const NodeId> out_neighbors(NodeId u) const {
    return {targets_.data() + offsets_[u], out_degree(u)};
  }
  std::span<const NodeId> in_neighbors(NodeId u) const {
    return {in_sources_.data() + in_offsets_[u], in_offsets_[u + 1] - in_offsets_[u]};
  }

  NodeId arc_source(ArcId a) const { return sources_[a]; }
  NodeId arc_target(ArcId a) const { return targets_[a]; }
  double arc_probability(ArcId a) const { return probabilities_[a]; }
  Arc arc(ArcId a) const { return {sources_[a], targets_[a], probabilities_[a]}; }

  std::span<const NodeId> targets() const { return targets_; }
  std::span<const std::uint32_t> thresholds() const { return thresholds_; }

  bool contains(NodeId u) const { return u < node_count_; }
  // Throws std::out_of_range for ids outside [0, node_count).
  void check_node(NodeId u) const;

 private:
  friend SocialGraph build_graph(std::span<const Edge>, Directedness, std::size_t,
                                 BuildStats*);

  std::size_t node_count_ = 0;
  Directedness directedness_ = Directedness::kDirected;
  std::vector<ArcId> offsets_{0};
  std::vector<NodeId> sources_;
  std::vector<NodeId> targets_;
  std::vector<double> probabilities_;
  std::vector<std::uint32_t> thresholds_;
  std::vector<std::uint32_t> in_offsets_{0};
  std::vector<NodeId> in_sources_;
};

// Builds an immutable graph. Undirected edges become two arcs of equal
// probability. node_count is max(min_node_count, 1 + largest id seen).
// Throws std::invalid_argument on probabilities outside (0,1] or self-loops.
SocialGraph build_graph(std::span<const Edge> edges, Directedness directedness,
                        std::size_t min_node_count = 0, BuildStats* stats = nullptr);

class NodeEconomics {
 public:
  NodeEconomics() = default;
  // Throws std::invalid_argument unless sizes match and every entry is >= 1.
  NodeEconomics(std::vector<Cost> costs, std::vector<Benefit> benefits);

  std::size_t size() const { return costs_.size(); }
  Cost cost(NodeId u) const { return costs_[u]; }
  Benefit benefit(NodeId u) const { return benefits_[u]; }
  std::span<const Cost> costs() const { return costs_; }
  std::span<const Benefit> benefits() const { return benefits_; }

  // Throws std::invalid_argument if the table does not cover exactly g's nodes.
  void check_matches(const SocialGraph& g) const;

 private:
  std::vector<Cost> costs_;
  std::vector<Benefit> benefits_;
};

// Total incentive cost of a seed set; duplicates are counted once.
Cost seed_cost(const NodeEconomics& economics, std::span<const NodeId> seeds);

// A subset of V(G) as a membership mask.
class NodeUniverse {
 public:
  NodeUniverse() = default;
  static NodeUniverse all(std::size_t node_count);
  static NodeUniverse none(std::size_t node_count);
  static NodeUniverse of(std::size_t node_count, std::span<const NodeId> members);

  std::size_t capacity() const { return mask_.size(); }
  bool contains(NodeId u) const { return u < mask_.size() && mask_[u] != 0; }
  std::size_t size() const;
  std::vector<NodeId> members() const;

  void insert(NodeId u);
  void erase(NodeId u);
  NodeUniverse without(std::span<const NodeId> removed) const;

  std::span<const std::uint8_t> mask() const { return mask_; }

  friend bool operator==(const NodeUniverse&, const NodeUniverse&) = default;

 private:
  std::vector<std::uint8_t> mask_;
};

// Read-only view of a SocialGraph with some nodes removed. Shares the base
// graph's storage; arcs touching a removed node are filtered on traversal.
// The base graph must outlive the view.
class GraphView {
 public:
  GraphView() = default;
  GraphView(const SocialGraph& graph);  // NOLINT: implicit full view

  const SocialGraph& base() const { return *graph_; }
  std::size_t capacity() const { return graph_->node_count(); }
  bool contains(NodeId u) const {
    return u < graph_->node_count() && (!alive_ || (*alive_)[u] != 0);
  }
  bool arc_alive(ArcId a) const {
    return !alive_ || ((*alive_)[graph_->arc_source(a)] && (*alive_)[graph_->arc_target(a)]);
  }
  bool is_full() const { return !alive_; }
  // Null when every node is alive.
  const std::uint8_t* alive_mask() const { return alive_ ? alive_->data() : nullptr; }

  std::size_t node_count() const;
  std::vector<NodeId> nodes() const;
  std::vector<ArcId> arc_ids() const;
  std::vector<Arc> arcs() const;
  NodeUniverse universe() const;

  // Throws std::out_of_range for ids outside the base graph.
  void check_node(NodeId u) const { graph_->check_node(u); }

 private:
  friend GraphView exclude_nodes(const GraphView&, std::span<const NodeId>);

  const SocialGraph* graph_ = nullptr;
  std::shared_ptr<const std::vector<std::uint8_t>> alive_;
};

GraphView exclude_nodes(const GraphView& view, std::span<const NodeId> removed);
GraphView exclude_nodes(const SocialGraph& graph, std::span<const NodeId> removed);

bool same_view(const GraphView& a, const GraphView& b);

// Out-degree for directed graphs, neighbour count for undirected, counting
// only neighbours alive in the view.
std::size_t degree(const GraphView& view, NodeId u);

// Local clustering coefficient over the undirected skeleton of the view:
// linked neighbour pairs / neighbour pairs, 0 with fewer than two neighbours.
double clustering_coefficient(const GraphView& view, NodeId u);

}  // namespace twophase
