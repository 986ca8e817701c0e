#include <algorithm>
#include <bit>
#include <map>
#include <string>

#include "twophase/profit.hpp"

namespace twophase {

ExactEvaluator::ExactEvaluator(ProfitInstance instance, std::size_t limit)
    : instance_(std::move(instance)), space_(instance_.view, limit) {
  instance_.validate();
}

Benefit ExactEvaluator::benefit_in(const LiveGraph& live, std::span<const NodeId> seeds) const {
  std::vector<NodeId> all(instance_.free_seeds.begin(), instance_.free_seeds.end());
  all.insert(all.end(), seeds.begin(), seeds.end());
  Benefit total = 0;
  for (NodeId v : space_.reachable(live, all)) {
    if (instance_.benefit_universe.contains(v)) total += instance_.economics->benefit(v);
  }
  return total;
}

double ExactEvaluator::benefit(std::span<const NodeId> seeds) const {
  check_seeds(instance_.view, seeds);
  if (seeds.empty() && instance_.free_seeds.empty()) return 0.0;
  double expected = 0.0;
  space_.for_each([&](const LiveGraph& live) {
    expected += live.generation_probability * static_cast<double>(benefit_in(live, seeds));
  });
  return expected;
}

double ExactEvaluator::influence(std::span<const NodeId> seeds) const {
  check_seeds(instance_.view, seeds);
  std::vector<NodeId> all(instance_.free_seeds.begin(), instance_.free_seeds.end());
  all.insert(all.end(), seeds.begin(), seeds.end());
  if (all.empty()) return 0.0;
  double expected = 0.0;
  space_.for_each([&](const LiveGraph& live) {
    std::size_t count = 0;
    for (NodeId v : space_.reachable(live, all)) {
      if (instance_.benefit_universe.contains(v)) ++count;
    }
    expected += live.generation_probability * static_cast<double>(count);
  });
  return expected;
}

double ExactEvaluator::profit(std::span<const NodeId> seeds) const {
  return benefit(seeds) - static_cast<double>(seed_cost(*instance_.economics, seeds));
}

double exact_influence(const GraphView& view, std::span<const NodeId> seeds, std::size_t limit) {
  const std::size_t n = view.capacity();
  const NodeEconomics unit(std::vector<Cost>(n, 1), std::vector<Benefit>(n, 1));
  return ExactEvaluator({view, &unit, NodeUniverse::all(n), {}}, limit).influence(seeds);
}

double exact_benefit(const GraphView& view, const NodeEconomics& economics,
                     std::span<const NodeId> seeds, const NodeUniverse& universe,
                     std::size_t limit) {
  return ExactEvaluator({view, &economics, universe, {}}, limit).benefit(seeds);
}

double exact_profit(const GraphView& view, const NodeEconomics& economics,
                    std::span<const NodeId> seeds, const NodeUniverse& universe,
                    std::size_t limit) {
  return ExactEvaluator({view, &economics, universe, {}}, limit).profit(seeds);
}

// --- Two-phase objective ------------------------------------------------------

namespace {

using Mask = std::uint32_t;

struct World {
  std::vector<Mask> out;  // out[u] = targets of kept arcs leaving u
  double probability;
};

// Nodes reached from `seeds` moving only through `allowed` nodes.
Mask reach(const World& w, Mask seeds, Mask allowed) {
  Mask reached = seeds;
  Mask frontier = seeds;
  while (frontier) {
    Mask next = 0;
    for (Mask f = frontier; f; f &= f - 1) next |= w.out[std::countr_zero(f)];
    next &= allowed & ~reached;
    reached |= next;
    frontier = next;
  }
  return reached;
}

Benefit mask_benefit(const NodeEconomics& econ, Mask m) {
  Benefit total = 0;
  for (; m; m &= m - 1) total += econ.benefit(static_cast<NodeId>(std::countr_zero(m)));
  return total;
}

Cost mask_cost(const NodeEconomics& econ, Mask m) {
  Cost total = 0;
  for (; m; m &= m - 1) total += econ.cost(static_cast<NodeId>(std::countr_zero(m)));
  return total;
}

}  // namespace

double exact_two_phase_objective(const SocialGraph& graph, const NodeEconomics& economics,
                                 std::span<const NodeId> phase1_seeds, std::size_t d,
                                 Cost phase2_budget, std::size_t limit) {
  const std::size_t n = graph.node_count();
  if (n > 16) throw std::invalid_argument("exact two-phase objective supports at most 16 nodes");
  economics.check_matches(graph);
  check_seeds(GraphView(graph), phase1_seeds);
  const LiveGraphSpace space(GraphView(graph), limit);

  Mask s1 = 0;
  for (NodeId v : phase1_seeds) s1 |= Mask{1} << v;
  const Mask everyone = n == 32 ? ~Mask{0} : (Mask{1} << n) - 1;
  const Cost s1_cost = mask_cost(economics, s1);

  // Group worlds by the observation (A_Y, R_Y) they produce.
  std::map<std::pair<Mask, Mask>, std::vector<World>> by_observation;
  space.for_each([&](const LiveGraph& live) {
    World w{std::vector<Mask>(n, 0), live.generation_probability};
    const auto arcs = space.arcs();
    for (std::size_t bit = 0; bit < arcs.size(); ++bit) {
      if ((live.kept_mask >> bit) & 1u) {
        w.out[graph.arc_source(arcs[bit])] |= Mask{1} << graph.arc_target(arcs[bit]);
      }
    }
    Mask active = s1;
    Mask latest = s1;
    for (std::size_t step = 1; step <= d && latest; ++step) {
      Mask next = 0;
      for (Mask f = latest; f; f &= f - 1) next |= w.out[std::countr_zero(f)];
      next &= ~active;
      active |= next;
      latest = next;
    }
    by_observation[{active, latest}].push_back(std::move(w));
  });

  double objective = 0.0;
  for (const auto& [observation, worlds] : by_observation) {
    const auto [already, recent] = observation;
    double p_obs = 0.0;
    for (const World& w : worlds) p_obs += w.probability;
    if (p_obs == 0.0) continue;

    const Mask fresh = everyone & ~already;
    const Mask allowed = fresh | recent;
    double best = 0.0;
    bool have_best = false;
    // Every subset of the untouched nodes, including the empty set.
    for (Mask s2 = fresh;; s2 = (s2 - 1) & fresh) {
      const Cost c2 = mask_cost(economics, s2);
      if (c2 <= phase2_budget) {
        double expected = 0.0;
        for (const World& w : worlds) {
          const Mask reached = reach(w, recent | s2, allowed) & fresh;
          expected += w.probability * static_cast<double>(mask_benefit(economics, reached));
        }
        const double value = expected / p_obs - static_cast<double>(c2);
        if (!have_best || value > best) {
          best = value;
          have_best = true;
        }
      }
      if (s2 == 0) break;
    }
    const double phase1 = static_cast<double>(mask_benefit(economics, already) - s1_cost);
    objective += p_obs * (phase1 + best);
  }
  return objective;
}

}  // namespace twophase
