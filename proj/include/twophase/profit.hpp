#pragma once

// Influence, benefit and profit of seed sets: Monte Carlo estimates over
// counter-based worlds, and exact values by live-graph enumeration. The two
// routes share no code beyond the graph storage, so the exact side can serve
// as an oracle for the simulated side.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "twophase/diffusion.hpp"
#include "twophase/graph.hpp"
#include "twophase/random.hpp"

namespace twophase {

struct ProfitEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t replications = 1;
};

struct EstimatorConfig {
  std::size_t replications = 100;
  std::size_t enumeration_limit = kDefaultEnumerationLimit;
  // Evaluate every seed set on the same worlds 0..replications-1. When off,
  // each seed set gets its own worlds (keyed by the set's contents).
  bool common_random_numbers = true;
  unsigned threads = 1;
};

// What a profit evaluation ranges over: diffusion happens inside `view`,
// benefit is earned only on `benefit_universe`, and `free_seeds` start
// active without being paid for. The full-graph instance has every node in
// the universe and no free seeds.
struct ProfitInstance {
  GraphView view;
  const NodeEconomics* economics = nullptr;
  NodeUniverse benefit_universe;
  std::vector<NodeId> free_seeds;

  static ProfitInstance full(const SocialGraph& graph, const NodeEconomics& economics);
  // Throws std::invalid_argument on inconsistent sizes or free seeds outside the view.
  void validate() const;
};

class MonteCarloEstimator {
 public:
  MonteCarloEstimator(ProfitInstance instance, EstimatorConfig config, RandomSource rng);

  const ProfitInstance& instance() const { return instance_; }
  const EstimatorConfig& config() const { return config_; }
  const RandomSource& rng() const { return rng_; }

  // Expected number of active nodes inside the benefit universe.
  ProfitEstimate influence(std::span<const NodeId> seeds) const;
  ProfitEstimate benefit(std::span<const NodeId> seeds) const;
  // benefit(seeds) - seed_cost(seeds); free seeds cost nothing.
  ProfitEstimate profit(std::span<const NodeId> seeds) const;

  // phi(base + u) - phi(base). Signed; u must be in the view and not in base.
  double marginal_gain(std::span<const NodeId> base, NodeId u) const;
  // Same for many candidates against one base set. With common random
  // numbers this runs one cascade per world for the base and extends it per
  // candidate, which yields the same per-world difference as two separate
  // evaluations.
  std::vector<double> marginal_gains(std::span<const NodeId> base,
                                     std::span<const NodeId> candidates) const;

  std::uint64_t world_key(std::size_t replication, std::span<const NodeId> seeds) const;

 private:
  enum class Measure { kCount, kBenefit };
  std::vector<std::int64_t> per_world(std::span<const NodeId> seeds, Measure measure) const;
  std::vector<NodeId> with_free_seeds(std::span<const NodeId> seeds) const;
  void check_paid_seeds(std::span<const NodeId> seeds) const;

  ProfitInstance instance_;
  EstimatorConfig config_;
  RandomSource rng_;
  std::vector<std::uint64_t> common_worlds_;
};

ProfitEstimate summarize(std::span<const std::int64_t> samples);

// Free-function entry points over the full graph or a restricted universe.
ProfitEstimate estimate_influence(const GraphView& view, std::span<const NodeId> seeds,
                                  const EstimatorConfig& config, const RandomSource& rng);
ProfitEstimate estimate_profit(const GraphView& view, const NodeEconomics& economics,
                               std::span<const NodeId> seeds, const NodeUniverse& universe,
                               const EstimatorConfig& config, const RandomSource& rng);
double marginal_profit_gain(const GraphView& view, const NodeEconomics& economics,
                            std::span<const NodeId> base, NodeId u, const NodeUniverse& universe,
                            const EstimatorConfig& config, const RandomSource& rng);

// --- Exact oracle -----------------------------------------------------------

class ExactEvaluator {
 public:
  // Throws EnumerationLimitError when the view has too many arcs.
  explicit ExactEvaluator(ProfitInstance instance, std::size_t limit = kDefaultEnumerationLimit);

  const ProfitInstance& instance() const { return instance_; }
  const LiveGraphSpace& space() const { return space_; }

  double influence(std::span<const NodeId> seeds) const;
  double benefit(std::span<const NodeId> seeds) const;
  double profit(std::span<const NodeId> seeds) const;
  // Benefit collected on one fixed live graph.
  Benefit benefit_in(const LiveGraph& live, std::span<const NodeId> seeds) const;

 private:
  ProfitInstance instance_;
  LiveGraphSpace space_;
};

double exact_influence(const GraphView& view, std::span<const NodeId> seeds,
                       std::size_t limit = kDefaultEnumerationLimit);
double exact_benefit(const GraphView& view, const NodeEconomics& economics,
                     std::span<const NodeId> seeds, const NodeUniverse& universe,
                     std::size_t limit = kDefaultEnumerationLimit);
double exact_profit(const GraphView& view, const NodeEconomics& economics,
                    std::span<const NodeId> seeds, const NodeUniverse& universe,
                    std::size_t limit = kDefaultEnumerationLimit);

// Exact two-phase objective: expected final profit when S1 seeds phase I,
// the cascade is observed to step d, and phase II then deploys the best seed
// set of cost <= phase2_budget from V \ A_Y (found by exhaustive search)
// together with R_Y. Expectations condition on the observation by grouping
// live graphs that produce it. Tiny instances only (<= 16 nodes).
double exact_two_phase_objective(const SocialGraph& graph, const NodeEconomics& economics,
                                 std::span<const NodeId> phase1_seeds, std::size_t d,
                                 Cost phase2_budget, std::size_t limit = kDefaultEnumerationLimit);

}  // namespace twophase
