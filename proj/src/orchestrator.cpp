#include "twophase/orchestrator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "twophase/parallel.hpp"

namespace twophase {

namespace {

RandomSource root_source(const PhaseConfig& config) { return RandomSource(config.master_seed); }

EstimatorConfig estimator_config(const PhaseConfig& config, std::size_t replications,
                                 unsigned threads) {
  EstimatorConfig ec;
  ec.replications = replications;
  ec.common_random_numbers = config.common_random_numbers;
  ec.threads = threads;
  return ec;
}

}  // namespace

Cost PhaseConfig::phase1_budget() const {
  return static_cast<Cost>(std::llround(split_fraction * static_cast<double>(total_budget)));
}

Cost PhaseConfig::phase2_budget() const { return total_budget - phase1_budget(); }

void PhaseConfig::validate() const {
  if (total_budget < 0) throw std::invalid_argument("total budget must be non-negative");
  if (!(split_fraction >= 0.0 && split_fraction <= 1.0)) {
    throw std::invalid_argument("split fraction must lie in [0,1]");
  }
  if (observation_step < 1) throw std::invalid_argument("observation step d must be >= 1");
  if (phase1_observations < 1 || phase2_runs_per_observation < 1 || selection_replications < 1 ||
      single_phase_replications < 1) {
    throw std::invalid_argument("observation and replication counts must be >= 1");
  }
}

Phase1Result run_phase1(const PhaseConfig& config, const SocialGraph& graph,
                        const NodeEconomics& economics) {
  config.validate();
  const RandomSource root = root_source(config);
  const MonteCarloEstimator est(ProfitInstance::full(graph, economics),
                                estimator_config(config, config.selection_replications,
                                                 config.threads),
                                root.derive("phase1-selection"));
  Phase1Result result;
  result.selection = select_seeds(config.algorithm,
                                  SelectionProblem::over_view(est, config.phase1_budget()),
                                  root.derive("phase1-random"));
  result.observations.resize(config.phase1_observations);
  const std::vector<NodeId> seeds = result.selection.sorted_seeds();
  parallel_for(config.phase1_observations, config.threads,
               [&](std::size_t begin, std::size_t end, unsigned) {
                 for (std::size_t i = begin; i < end; ++i) {
                   result.observations[i] = observe_until(graph, seeds, config.observation_step,
                                                          root.derive("phase1-observation", i));
                 }
               });
  return result;
}

ObservationRecord run_phase2(const PhaseConfig& config, const SocialGraph& graph,
                             const NodeEconomics& economics, const SelectionOutcome& phase1,
                             const PartialObservation& observation, std::size_t index) {
  config.validate();
  const std::size_t n = graph.node_count();
  const NodeUniverse active = NodeUniverse::of(n, observation.already_active);
  for (NodeId v : observation.newly_active) {
    if (!active.contains(v)) throw std::invalid_argument("observation: R_Y is not a subset of A_Y");
  }
  for (NodeId v : phase1.seeds) {
    if (!active.contains(v)) {
      throw std::invalid_argument("observation: phase-I seed missing from A_Y");
    }
  }

  // Already-active nodes other than R_Y have spent their activation attempts.
  const NodeUniverse recent = NodeUniverse::of(n, observation.newly_active);
  std::vector<NodeId> spent;
  for (NodeId v : observation.already_active) {
    if (!recent.contains(v)) spent.push_back(v);
  }
  const NodeUniverse fresh = NodeUniverse::all(n).without(observation.already_active);
  ProfitInstance instance{exclude_nodes(graph, spent), &economics, fresh,
                          observation.newly_active};

  const RandomSource root = root_source(config);
  const MonteCarloEstimator selector(instance,
                                     estimator_config(config, config.selection_replications, 1),
                                     root.derive("phase2-selection", index));
  ObservationRecord rec;
  rec.index = index;
  rec.already_active = observation.already_active.size();
  rec.newly_active = observation.newly_active.size();
  rec.phase2_budget = config.phase2_budget() + phase1.remaining_budget;
  rec.selection = select_seeds(config.algorithm, {&selector, fresh, rec.phase2_budget},
                               root.derive("phase2-random", index));

  const MonteCarloEstimator evaluator(
      std::move(instance), estimator_config(config, config.phase2_runs_per_observation, 1),
      root.derive("phase2-evaluation", index));
  rec.phase2_profit = evaluator.profit(rec.selection.seeds);

  Benefit earned = 0;
  for (NodeId v : observation.already_active) earned += economics.benefit(v);
  rec.phase1_profit = static_cast<double>(earned - phase1.spent);
  rec.total_profit = rec.phase1_profit + rec.phase2_profit.mean;
  return rec;
}

SinglePhaseResult run_single_phase(const PhaseConfig& config, const SocialGraph& graph,
                                   const NodeEconomics& economics) {
  config.validate();
  const RandomSource root = root_source(config);
  const ProfitInstance instance = ProfitInstance::full(graph, economics);
  const MonteCarloEstimator selector(
      instance, estimator_config(config, config.selection_replications, config.threads),
      root.derive("single-selection"));
  SinglePhaseResult result;
  result.selection =
      select_seeds(config.algorithm, SelectionProblem::over_view(selector, config.total_budget),
                   root.derive("single-random"));
  const MonteCarloEstimator evaluator(
      instance, estimator_config(config, config.single_phase_replications, config.threads),
      root.derive("single-evaluation"));
  result.profit = evaluator.profit(result.selection.seeds);
  return result;
}

TwoPhaseResult run_two_phase(const PhaseConfig& config, const SocialGraph& graph,
                             const NodeEconomics& economics) {
  economics.check_matches(graph);
  Phase1Result phase1 = run_phase1(config, graph, economics);

  TwoPhaseResult result;
  result.observations.resize(phase1.observations.size());
  parallel_for(phase1.observations.size(), config.threads,
               [&](std::size_t begin, std::size_t end, unsigned) {
                 for (std::size_t i = begin; i < end; ++i) {
                   result.observations[i] = run_phase2(config, graph, economics, phase1.selection,
                                                       phase1.observations[i], i);
                 }
               });
  result.phase1 = std::move(phase1.selection);

  double sum = 0.0;
  for (std::size_t i = 0; i < result.observations.size(); ++i) {
    const double v = result.observations[i].total_profit;
    sum += v;
    if (v > result.observations[result.best_observation].total_profit) result.best_observation = i;
  }
  const double count = static_cast<double>(result.observations.size());
  result.mean_profit = sum / count;
  if (result.observations.size() > 1) {
    double ss = 0.0;
    for (const auto& rec : result.observations) {
      ss += (rec.total_profit - result.mean_profit) * (rec.total_profit - result.mean_profit);
    }
    result.profit_stddev = std::sqrt(ss / (count - 1.0));
  }
  const ObservationRecord& best = result.observations[result.best_observation];
  result.max_profit = best.total_profit;
  result.phase2_cardinality = best.selection.seeds.size();
  result.total_cardinality = result.phase1.seeds.size() + best.selection.seeds.size();
  result.total_cost = result.phase1.spent + best.selection.spent;

  result.single_phase = run_single_phase(config, graph, economics);
  return result;
}

}  // namespace twophase
