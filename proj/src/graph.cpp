#include "twophase/graph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>

namespace twophase {

namespace {

std::uint64_t pair_key(NodeId a, NodeId b) {
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

}  // namespace

std::uint32_t probability_threshold(double probability) {
  // P(hash <= t) = (t + 1) / 2^32.
  const double scaled = std::nearbyint(probability * 4294967296.0);
  if (scaled <= 1.0) return 0;
  if (scaled >= 4294967296.0) return 0xFFFFFFFFu;
  return static_cast<std::uint32_t>(scaled) - 1u;
}

void SocialGraph::check_node(NodeId u) const {
  if (u >= node_count_) {
    throw std::out_of_range("unknown node id " + std::to_string(u) + " (graph has " +
                            std::to_string(node_count_) + " nodes)");
  }
}

SocialGraph build_graph(std::span<const Edge> edges, Directedness directedness,
                        std::size_t min_node_count, BuildStats* stats) {
  const bool undirected = directedness == Directedness::kUndirected;
  std::size_t node_count = min_node_count;
  std::vector<Arc> arcs;
  arcs.reserve(edges.size() * (undirected ? 2 : 1));
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(edges.size() * 2);
  std::size_t duplicates = 0;

  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    if (!(e.probability > 0.0 && e.probability <= 1.0)) {
      throw std::invalid_argument("edge " + std::to_string(i) + " (" + std::to_string(e.source) +
                                  "," + std::to_string(e.target) +
                                  "): probability must lie in (0,1], got " +
                                  std::to_string(e.probability));
    }
    if (e.source == e.target) {
      throw std::invalid_argument("edge " + std::to_string(i) + ": self-loop on node " +
                                  std::to_string(e.source));
    }
    node_count = std::max<std::size_t>(node_count, std::max(e.source, e.target) + std::size_t{1});
    const NodeId lo = undirected ? std::min(e.source, e.target) : e.source;
    const NodeId hi = undirected ? std::max(e.source, e.target) : e.target;
    if (!seen.insert(pair_key(lo, hi)).second) {
      ++duplicates;
      continue;
    }
    arcs.push_back({e.source, e.target, e.probability});
    if (undirected) arcs.push_back({e.target, e.source, e.probability});
  }

  SocialGraph g;
  g.node_count_ = node_count;
  g.directedness_ = directedness;

  // Stable counting sort by source keeps first-occurrence adjacency order.
  g.offsets_.assign(node_count + 1, 0);
  for (const Arc& a : arcs) ++g.offsets_[a.source + 1];
  for (std::size_t u = 0; u < node_count; ++u) g.offsets_[u + 1] += g.offsets_[u];
  g.sources_.resize(arcs.size());
  g.targets_.resize(arcs.size());
  g.probabilities_.resize(arcs.size());
  g.thresholds_.resize(arcs.size());
  std::vector<ArcId> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const Arc& a : arcs) {
    const ArcId slot = cursor[a.source]++;
    g.sources_[slot] = a.source;
    g.targets_[slot] = a.target;
    g.probabilities_[slot] = a.probability;
    g.thresholds_[slot] = probability_threshold(a.probability);
  }

  g.in_offsets_.assign(node_count + 1, 0);
  for (NodeId t : g.targets_) ++g.in_offsets_[t + 1];
  for (std::size_t u = 0; u < node_count; ++u) g.in_offsets_[u + 1] += g.in_offsets_[u];
  g.in_sources_.resize(arcs.size());
  std::vector<std::uint32_t> in_cursor(g.in_offsets_.begin(), g.in_offsets_.end() - 1);
  for (std::size_t a = 0; a < g.targets_.size(); ++a) {
    g.in_sources_[in_cursor[g.targets_[a]]++] = g.sources_[a];
  }

  if (stats != nullptr) {
    stats->input_edges = edges.size();
    stats->duplicate_edges = duplicates;
  }
  return g;
}

NodeEconomics::NodeEconomics(std::vector<Cost> costs, std::vector<Benefit> benefits)
    : costs_(std::move(costs)), benefits_(std::move(benefits)) {
  if (costs_.size() != benefits_.size()) {
    throw std::invalid_argument("cost and benefit tables differ in size");
  }
  for (std::size_t u = 0; u < costs_.size(); ++u) {
    if (costs_[u] < 1 || benefits_[u] < 1) {
      throw std::invalid_argument("node " + std::to_string(u) +
                                  ": cost and benefit must be positive integers");
    }
  }
}

void NodeEconomics::check_matches(const SocialGraph& g) const {
  if (costs_.size() != g.node_count()) {
    throw std::invalid_argument("economics table covers " + std::to_string(costs_.size()) +
                                " nodes, graph has " + std::to_string(g.node_count()));
  }
}

Cost seed_cost(const NodeEconomics& economics, std::span<const NodeId> seeds) {
  std::vector<NodeId> unique(seeds.begin(), seeds.end());
  std::sort(unique.begin(), unique.end());
  unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
  Cost total = 0;
  for (NodeId u : unique) {
    if (u >= economics.size()) {
      throw std::out_of_range("unknown node id " + std::to_string(u) + " in seed set");
    }
    total += economics.cost(u);
  }
  return total;
}

// --- NodeUniverse ----------------------------------------------------------

NodeUniverse NodeUniverse::all(std::size_t node_count) {
  NodeUniverse u;
  u.mask_.assign(node_count, 1);
  return u;
}

NodeUniverse NodeUniverse::none(std::size_t node_count) {
  NodeUniverse u;
  u.mask_.assign(node_count, 0);
  return u;
}

NodeUniverse NodeUniverse::of(std::size_t node_count, std::span<const NodeId> members) {
  NodeUniverse u = none(node_count);
  for (NodeId v : members) u.insert(v);
  return u;
}

std::size_t NodeUniverse::size() const {
  return static_cast<std::size_t>(std::count(mask_.begin(), mask_.end(), std::uint8_t{1}));
}

std::vector<NodeId> NodeUniverse::members() const {
  std::vector<NodeId> out;
  for (std::size_t v = 0; v < mask_.size(); ++v) {
    if (mask_[v]) out.push_back(static_cast<NodeId>(v));
  }
  return out;
}

void NodeUniverse::insert(NodeId u) {
  if (u >= mask_.size()) throw std::out_of_range("unknown node id " + std::to_string(u));
  mask_[u] = 1;
}

void NodeUniverse::erase(NodeId u) {
  if (u >= mask_.size()) throw std::out_of_range("unknown node id " + std::to_string(u));
  mask_[u] = 0;
}

NodeUniverse NodeUniverse::without(std::span<const NodeId> removed) const {
  NodeUniverse out = *this;
  for (NodeId v : removed) out.erase(v);
  return out;
}

// --- GraphView -------------------------------------------------------------

GraphView::GraphView(const SocialGraph& graph) : graph_(&graph) {}

std::size_t GraphView::node_count() const {
  if (!alive_) return graph_->node_count();
  return static_cast<std::size_t>(std::count(alive_->begin(), alive_->end(), std::uint8_t{1}));
}

std::vector<NodeId> GraphView::nodes() const {
  std::vector<NodeId> out;
  for (NodeId u = 0; u < graph_->node_count(); ++u) {
    if (contains(u)) out.push_back(u);
  }
  return out;
}

std::vector<ArcId> GraphView::arc_ids() const {
  std::vector<ArcId> out;
  for (ArcId a = 0; a < graph_->arc_count(); ++a) {
    if (arc_alive(a)) out.push_back(a);
  }
  return out;
}

std::vector<Arc> GraphView::arcs() const {
  std::vector<Arc> out;
  for (ArcId a : arc_ids()) out.push_back(graph_->arc(a));
  return out;
}

NodeUniverse GraphView::universe() const {
  return alive_ ? NodeUniverse::of(capacity(), nodes()) : NodeUniverse::all(capacity());
}

GraphView exclude_nodes(const GraphView& view, std::span<const NodeId> removed) {
  for (NodeId u : removed) view.check_node(u);
  if (removed.empty()) return view;
  std::vector<std::uint8_t> alive =
      view.alive_ ? *view.alive_ : std::vector<std::uint8_t>(view.capacity(), 1);
  for (NodeId u : removed) alive[u] = 0;
  GraphView out(*view.graph_);
  out.alive_ = std::make_shared<const std::vector<std::uint8_t>>(std::move(alive));
  return out;
}

GraphView exclude_nodes(const SocialGraph& graph, std::span<const NodeId> removed) {
  return exclude_nodes(GraphView(graph), removed);
}

bool same_view(const GraphView& a, const GraphView& b) {
  return &a.base() == &b.base() && a.nodes() == b.nodes() && a.arc_ids() == b.arc_ids();
}

std::size_t degree(const GraphView& view, NodeId u) {
  view.check_node(u);
  if (!view.contains(u)) return 0;
  const SocialGraph& g = view.base();
  std::size_t d = 0;
  for (ArcId a = g.first_arc(u); a < g.end_arc(u); ++a) {
    if (view.contains(g.arc_target(a))) ++d;
  }
  return d;
}

double clustering_coefficient(const GraphView& view, NodeId u) {
  view.check_node(u);
  if (!view.contains(u)) return 0.0;
  const SocialGraph& g = view.base();

  std::vector<NodeId> neighbours;
  for (NodeId v : g.out_neighbors(u)) {
    if (view.contains(v)) neighbours.push_back(v);
  }
  for (NodeId v : g.in_neighbors(u)) {
    if (view.contains(v)) neighbours.push_back(v);
  }
  std::sort(neighbours.begin(), neighbours.end());
  neighbours.erase(std::unique(neighbours.begin(), neighbours.end()), neighbours.end());
  const std::size_t k = neighbours.size();
  if (k < 2) return 0.0;

  std::vector<std::uint64_t> linked;
  for (NodeId a : neighbours) {
    for (NodeId b : g.out_neighbors(a)) {
      if (b != a && std::binary_search(neighbours.begin(), neighbours.end(), b)) {
        linked.push_back(pair_key(std::min(a, b), std::max(a, b)));
      }
    }
  }
  std::sort(linked.begin(), linked.end());
  linked.erase(std::unique(linked.begin(), linked.end()), linked.end());
  return static_cast<double>(linked.size()) / (static_cast<double>(k * (k - 1)) / 2.0);
}

}  // namespace twophase
