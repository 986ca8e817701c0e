#pragma once

// The two-phase protocol: select S1 with B1 on the full graph, observe the
// phase-I cascade to step d many times, and for each observation select S2
// on the residual network with B2 plus the unspent phase-I budget, seeding
// phase II with S2 and the freshly activated nodes R_Y.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "twophase/diffusion.hpp"
#include "twophase/graph.hpp"
#include "twophase/profit.hpp"
#include "twophase/selection.hpp"

namespace twophase {

struct PhaseConfig {
  Cost total_budget = 0;
  double split_fraction = 0.6;  // B1 = round(split * B)
  std::size_t observation_step = 3;
  std::size_t phase1_observations = 100;
  std::size_t phase2_runs_per_observation = 100;
  // Worlds per marginal-gain evaluation inside the selectors.
  std::size_t selection_replications = 100;
  std::size_t single_phase_replications = 10000;
  bool common_random_numbers = true;
  Algorithm algorithm = Algorithm::kSingleGreedy;
  std::uint64_t master_seed = 0;
  unsigned threads = 1;

  Cost phase1_budget() const;
  Cost phase2_budget() const;
  // Throws std::invalid_argument on an unusable configuration.
  void validate() const;
};

struct Phase1Result {
  SelectionOutcome selection;
  std::vector<PartialObservation> observations;
};

struct ObservationRecord {
  std::size_t index = 0;
  std::size_t already_active = 0;  // |A_Y|
  std::size_t newly_active = 0;    // |R_Y|
  SelectionOutcome selection;      // S2
  Cost phase2_budget = 0;          // B2 + unspent B1
  // b(A_Y) - C(S1): what phase I has earned at the observation step.
  double phase1_profit = 0.0;
  // Restricted profit of R_Y + S2 on V \ A_Y over the phase-II runs.
  ProfitEstimate phase2_profit;
  double total_profit = 0.0;
};

struct SinglePhaseResult {
  SelectionOutcome selection;
  ProfitEstimate profit;
};

struct TwoPhaseResult {
  SelectionOutcome phase1;
  std::vector<ObservationRecord> observations;
  std::size_t best_observation = 0;
  double max_profit = 0.0;  // max over observations of total_profit
  double mean_profit = 0.0;
  double profit_stddev = 0.0;
  std::size_t phase2_cardinality = 0;  // |S2| of the best observation
  std::size_t total_cardinality = 0;   // |S1 + S2| of the best observation
  Cost total_cost = 0;
  SinglePhaseResult single_phase;
};

Phase1Result run_phase1(const PhaseConfig& config, const SocialGraph& graph,
                        const NodeEconomics& economics);

ObservationRecord run_phase2(const PhaseConfig& config, const SocialGraph& graph,
                             const NodeEconomics& economics, const SelectionOutcome& phase1,
                             const PartialObservation& observation, std::size_t index);

SinglePhaseResult run_single_phase(const PhaseConfig& config, const SocialGraph& graph,
                                   const NodeEconomics& economics);

TwoPhaseResult run_two_phase(const PhaseConfig& config, const SocialGraph& graph,
                             const NodeEconomics& economics);

}  // namespace twophase
