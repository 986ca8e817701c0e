#include <algorithm>
#include <string>

#include "twophase/diffusion.hpp"

namespace twophase {

void check_seeds(const GraphView& view, std::span<const NodeId> seeds) {
  for (NodeId s : seeds) {
    if (!view.contains(s)) {
      throw std::invalid_argument("seed " + std::to_string(s) + " is outside the node universe");
    }
  }
}

CascadeSimulator::CascadeSimulator(const GraphView& view)
    : view_(view), alive_(view.alive_mask()), stamp_(view.capacity(), 0) {}

std::uint32_t CascadeSimulator::next_epoch() {
  if (epoch_ == std::numeric_limits<std::uint32_t>::max()) {
    // Renumber: keep the last run's active set as epoch 1.
    for (auto& s : stamp_) s = (s == run_epoch_) ? 1u : 0u;
    epoch_ = 1;
    run_epoch_ = 1;
  }
  return ++epoch_;
}

DiffusionTrace simulate_ic(const GraphView& view, std::span<const NodeId> seeds,
                           const RandomSource& world, std::optional<std::size_t> horizon) {
  check_seeds(view, seeds);
  CascadeSimulator sim(view);
  DiffusionTrace trace;
  if (seeds.empty()) return trace;
  sim.run(seeds, world.key(), horizon.value_or(kToFixpoint), [&](NodeId v, std::size_t step) {
    if (trace.steps.size() <= step) trace.steps.resize(step + 1);
    trace.steps[step].push_back(v);
    trace.final_active.push_back(v);
  });
  for (auto& s : trace.steps) std::sort(s.begin(), s.end());
  std::sort(trace.final_active.begin(), trace.final_active.end());
  return trace;
}

PartialObservation observe_until(const GraphView& view, std::span<const NodeId> seeds,
                                 std::size_t d, const RandomSource& world) {
  const DiffusionTrace trace = simulate_ic(view, seeds, world, d);
  PartialObservation obs;
  obs.horizon = d;
  obs.already_active = trace.final_active;
  if (d < trace.steps.size()) obs.newly_active = trace.steps[d];
  return obs;
}

}  // namespace twophase
