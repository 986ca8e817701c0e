#include <algorithm>
#include <string>

#include "twophase/diffusion.hpp"

namespace twophase {

LiveGraphSpace::LiveGraphSpace(const GraphView& view, std::size_t limit)
    : view_(view), arcs_(view.arc_ids()) {
  if (arcs_.size() > limit || arcs_.size() >= 63) {
    throw EnumerationLimitError("live-graph enumeration refused: " + std::to_string(arcs_.size()) +
                                " arcs exceed the limit of " + std::to_string(limit));
  }
  const SocialGraph& g = view.base();
  probabilities_.reserve(arcs_.size());
  offsets_.assign(g.node_count() + 1, 0);
  for (ArcId a : arcs_) {
    probabilities_.push_back(g.arc_probability(a));
    ++offsets_[g.arc_source(a) + 1];
  }
  for (std::size_t u = 0; u < g.node_count(); ++u) offsets_[u + 1] += offsets_[u];
  adjacency_.resize(arcs_.size());
  std::vector<std::uint32_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (std::uint32_t bit = 0; bit < arcs_.size(); ++bit) {
    const ArcId a = arcs_[bit];
    adjacency_[cursor[g.arc_source(a)]++] = {bit, g.arc_target(a)};
  }
}

LiveGraph LiveGraphSpace::live_graph(std::uint64_t kept_mask) const {
  double p = 1.0;
  for (std::size_t i = 0; i < probabilities_.size(); ++i) {
    p *= (kept_mask >> i) & 1u ? probabilities_[i] : 1.0 - probabilities_[i];
  }
  return {kept_mask, p};
}

std::vector<ArcId> LiveGraphSpace::kept_arcs(const LiveGraph& live) const {
  std::vector<ArcId> out;
  for (std::size_t i = 0; i < arcs_.size(); ++i) {
    if ((live.kept_mask >> i) & 1u) out.push_back(arcs_[i]);
  }
  return out;
}

std::vector<std::vector<NodeId>> LiveGraphSpace::layers(const LiveGraph& live,
                                                        std::span<const NodeId> seeds,
                                                        std::size_t horizon) const {
  check_seeds(view_, seeds);
  std::vector<std::vector<NodeId>> out;
  std::vector<std::uint8_t> seen(view_.capacity(), 0);
  std::vector<NodeId> layer;
  for (NodeId s : seeds) {
    if (!seen[s]) {
      seen[s] = 1;
      layer.push_back(s);
    }
  }
  for (std::size_t depth = 0; !layer.empty(); ++depth) {
    std::sort(layer.begin(), layer.end());
    out.push_back(layer);
    if (depth == horizon) break;
    std::vector<NodeId> next;
    for (NodeId u : layer) {
      for (std::uint32_t k = offsets_[u]; k < offsets_[u + 1]; ++k) {
        const LocalArc& arc = adjacency_[k];
        if (((live.kept_mask >> arc.bit) & 1u) && !seen[arc.target]) {
          seen[arc.target] = 1;
          next.push_back(arc.target);
        }
      }
    }
    layer = std::move(next);
  }
  return out;
}

std::vector<NodeId> LiveGraphSpace::reachable(const LiveGraph& live,
                                              std::span<const NodeId> seeds) const {
  std::vector<NodeId> out;
  for (const auto& layer : layers(live, seeds)) out.insert(out.end(), layer.begin(), layer.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<LiveGraph> enumerate_live_graphs(const GraphView& view, std::size_t limit) {
  const LiveGraphSpace space(view, limit);
  std::vector<LiveGraph> out;
  out.reserve(space.world_count());
  space.for_each([&](const LiveGraph& live) { out.push_back(live); });
  return out;
}

std::vector<NodeId> reachable_set(const LiveGraphSpace& space, const LiveGraph& live,
                                  std::span<const NodeId> seeds) {
  return space.reachable(live, seeds);
}

}  // namespace twophase
