#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "twophase/graph.hpp"
#include "twophase/kernels.hpp"
#include "twophase/random.hpp"

namespace twophase {

inline constexpr std::size_t kToFixpoint = std::numeric_limits<std::size_t>::max();
inline constexpr std::size_t kDefaultEnumerationLimit = 20;

// steps[t] = nodes first activated at step t (ascending id), steps[0] = seeds.
struct DiffusionTrace {
  std::vector<std::vector<NodeId>> steps;
  std::vector<NodeId> final_active;
};

// Outcome of phase I observed up to step `horizon`.
struct PartialObservation {
  std::size_t horizon = 0;
  std::vector<NodeId> already_active;  // A_Y: every node active after the step
  std::vector<NodeId> newly_active;    // R_Y: nodes activated exactly at the step

  friend bool operator==(const PartialObservation&, const PartialObservation&) = default;
};

// Throws std::invalid_argument if any seed is absent from the view.
void check_seeds(const GraphView& view, std::span<const NodeId> seeds);

// Independent Cascade on a fixed world. Reusable workspace (epoch-stamped
// marks, no per-run clearing); one instance per worker thread.
class CascadeSimulator {
 public:
  explicit CascadeSimulator(const GraphView& view);

  const GraphView& view() const { return view_; }

  // Runs from `seeds` until fixpoint or until step `horizon` has been
  // applied. on_activate(node, step) fires once per activated node, seeds
  // at step 0. Seeds are not validated here (see check_seeds). Returns the
  // index of the last non-empty step.
  template <typename OnActivate>
  std::size_t run(std::span<const NodeId> seeds, std::uint64_t world, std::size_t horizon,
                  OnActivate&& on_activate);

  // After run(), explores what `root` reaches on top of the run's active set
  // in the same world (fixpoint). on_activate fires for root (if new) and
  // every newly reached node. Successive probes are independent of each other.
  template <typename OnActivate>
  void probe(NodeId root, std::uint64_t world, OnActivate&& on_activate);

  // Membership in the active set of the latest run().
  bool active(NodeId u) const { return stamp_[u] == run_epoch_; }

 private:
  std::uint32_t next_epoch();
  template <typename OnActivate>
  void expand(NodeId u, std::uint64_t world, std::size_t step, OnActivate& on_activate);

  GraphView view_;
  const std::uint8_t* alive_ = nullptr;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
  std::uint32_t run_epoch_ = 0;
  std::vector<NodeId> frontier_;
  std::vector<NodeId> next_;
  std::vector<std::uint8_t> coins_;
};

DiffusionTrace simulate_ic(const GraphView& view, std::span<const NodeId> seeds,
                           const RandomSource& world, std::optional<std::size_t> horizon = {});

// A_Y / R_Y after observing the cascade to step d (R_Y = seeds when d = 0).
PartialObservation observe_until(const GraphView& view, std::span<const NodeId> seeds,
                                 std::size_t d, const RandomSource& world);

// --- Live-graph enumeration (exact oracle) ----------------------------------

class EnumerationLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One of the 2^m live graphs: bit i of kept_mask keeps arc space.arcs()[i].
struct LiveGraph {
  std::uint64_t kept_mask = 0;
  double generation_probability = 1.0;
};

// The set of live graphs of a view, m = arcs alive in the view.
class LiveGraphSpace {
 public:
  // Throws EnumerationLimitError if the view has more arcs than `limit`.
  explicit LiveGraphSpace(const GraphView& view, std::size_t limit = kDefaultEnumerationLimit);

  const GraphView& view() const { return view_; }
  std::size_t arc_count() const { return arcs_.size(); }
  std::uint64_t world_count() const { return std::uint64_t{1} << arcs_.size(); }
  std::span<const ArcId> arcs() const { return arcs_; }

  LiveGraph live_graph(std::uint64_t kept_mask) const;
  std::vector<ArcId> kept_arcs(const LiveGraph& live) const;

  template <typename F>
  void for_each(F&& f) const {
    for (std::uint64_t mask = 0; mask < world_count(); ++mask) f(live_graph(mask));
  }

  // Nodes reachable from the seeds over kept arcs, including the seeds
  // (ascending id). Throws std::invalid_argument for seeds not in the view.
  std::vector<NodeId> reachable(const LiveGraph& live, std::span<const NodeId> seeds) const;
  // Breadth-first layers over kept arcs: layers[t] = nodes at distance t,
  // truncated after layer `horizon`.
  std::vector<std::vector<NodeId>> layers(const LiveGraph& live, std::span<const NodeId> seeds,
                                          std::size_t horizon = kToFixpoint) const;

 private:
  struct LocalArc {
    std::uint32_t bit;
    NodeId target;
  };

  GraphView view_;
  std::vector<ArcId> arcs_;
  std::vector<double> probabilities_;
  std::vector<std::uint32_t> offsets_;
  std::vector<LocalArc> adjacency_;
};

std::vector<LiveGraph> enumerate_live_graphs(const GraphView& view,
                                             std::size_t limit = kDefaultEnumerationLimit);

std::vector<NodeId> reachable_set(const LiveGraphSpace& space, const LiveGraph& live,
                                  std::span<const NodeId> seeds);

// --- CascadeSimulator templates ---------------------------------------------

template <typename OnActivate>
void CascadeSimulator::expand(NodeId u, std::uint64_t world, std::size_t step,
                              OnActivate& on_activate) {
  const SocialGraph& g = view_.base();
  const ArcId first = g.first_arc(u);
  const std::size_t deg = g.out_degree(u);
  if (deg == 0) return;
  if (coins_.size() < deg) coins_.resize(deg);
  kernels::draw_arc_coins(world, first, g.thresholds().subspan(first, deg),
                          std::span<std::uint8_t>(coins_.data(), deg));
  const NodeId* targets = g.targets().data() + first;
  for (std::size_t i = 0; i < deg; ++i) {
    if (!coins_[i]) continue;
    const NodeId v = targets[i];
    if (alive_ != nullptr && !alive_[v]) continue;
    if (stamp_[v] == epoch_ || stamp_[v] == run_epoch_) continue;
    stamp_[v] = epoch_;
    next_.push_back(v);
    on_activate(v, step);
  }
}

template <typename OnActivate>
std::size_t CascadeSimulator::run(std::span<const NodeId> seeds, std::uint64_t world,
                                  std::size_t horizon, OnActivate&& on_activate) {
  epoch_ = next_epoch();
  run_epoch_ = epoch_;
  frontier_.clear();
  for (NodeId s : seeds) {
    if (stamp_[s] == epoch_) continue;
    stamp_[s] = epoch_;
    frontier_.push_back(s);
    on_activate(s, std::size_t{0});
  }
  std::size_t last = 0;
  for (std::size_t step = 1; step <= horizon && !frontier_.empty(); ++step) {
    next_.clear();
    for (NodeId u : frontier_) expand(u, world, step, on_activate);
    if (!next_.empty()) last = step;
    frontier_.swap(next_);
  }
  return last;
}

template <typename OnActivate>
void CascadeSimulator::probe(NodeId root, std::uint64_t world, OnActivate&& on_activate) {
  if (stamp_[root] == run_epoch_) return;
  epoch_ = next_epoch();
  stamp_[root] = epoch_;
  on_activate(root, std::size_t{0});
  frontier_.assign(1, root);
  for (std::size_t step = 1; !frontier_.empty(); ++step) {
    next_.clear();
    for (NodeId u : frontier_) expand(u, world, step, on_activate);
    frontier_.swap(next_);
  }
}

}  // namespace twophase
