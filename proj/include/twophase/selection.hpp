#pragma once

// Budgeted seed selection over a (possibly restricted) universe. Every
// selector reads marginal profit gains from a MonteCarloEstimator, which
// fixes the diffusion view, the benefit universe and any free seeds.
// Ties are broken by ascending node id throughout.

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "twophase/graph.hpp"
#include "twophase/profit.hpp"
#include "twophase/random.hpp"

namespace twophase {

enum class Algorithm {
  kSingleGreedy,
  kDoubleGreedy,
  kRandom,
  kHighDegree,
  kClusteringCoefficient,
  kSingleDiscount,
};

inline constexpr Algorithm kAllAlgorithms[] = {
    Algorithm::kSingleGreedy,          Algorithm::kDoubleGreedy, Algorithm::kRandom,
    Algorithm::kHighDegree,            Algorithm::kClusteringCoefficient,
    Algorithm::kSingleDiscount,
};

std::string_view algorithm_name(Algorithm algorithm);
std::optional<Algorithm> parse_algorithm(std::string_view name);

enum class Decision {
  kEvaluated,       // gain computed, not chosen this round
  kAccepted,        // added to the seed set
  kRejectedBudget,  // cost exceeds the remaining budget
  kRejectedGain,    // gain (or ratio test) did not pass
  kStopped,         // best gain <= 0: selection ends
};

std::string_view decision_name(Decision decision);

struct GainRatioPair {
  double add_ratio = 0.0;     // r+ = (phi(S + u) - phi(S)) / C(u)
  double remove_ratio = 0.0;  // r- = -(phi(T - u) - phi(T)) / C(u)
};

struct AuditEntry {
  std::size_t round = 0;
  NodeId node = 0;
  double gain = 0.0;   // marginal profit gain (NaN when not evaluated)
  double ratio = 0.0;  // gain / C(node)
  GainRatioPair ratios;  // double greedy only
  Decision decision = Decision::kEvaluated;
};

struct SelectionOutcome {
  std::vector<NodeId> seeds;  // in order of selection
  Cost budget = 0;
  Cost spent = 0;
  Cost remaining_budget = 0;
  std::vector<AuditEntry> trace;
  std::vector<NodeId> upper_set;  // double greedy: T at termination (== seeds)

  std::vector<NodeId> sorted_seeds() const;
};

struct SelectionProblem {
  const MonteCarloEstimator* estimator = nullptr;
  NodeUniverse candidates;  // nodes that may be seeded, subset of the view
  Cost budget = 0;

  // Candidates = every node of the estimator's view.
  static SelectionProblem over_view(const MonteCarloEstimator& estimator, Cost budget);
  void validate() const;
};

// Repeated argmax of gain/cost over the candidate pool. Stops when the best
// gain is <= 0 or the pool is empty; unaffordable candidates leave the pool.
SelectionOutcome single_greedy(const SelectionProblem& problem);

// One pass in ascending id with S growing from {} and T shrinking from the
// candidate set; u joins S iff r+ >= r- and C(u) fits, otherwise leaves T.
SelectionOutcome double_greedy(const SelectionProblem& problem);

// Uniformly shuffled candidates, each taken if affordable. No gain filter.
SelectionOutcome baseline_random(const SelectionProblem& problem, const RandomSource& rng);

// Candidates scanned by descending degree; taken when affordable and gain >= 0.
SelectionOutcome baseline_high_degree(const SelectionProblem& problem);
// As high degree, ordered by descending clustering coefficient.
SelectionOutcome baseline_clustering_coefficient(const SelectionProblem& problem);
// Max effective degree first; each selection discounts its out-neighbours by 1.
SelectionOutcome baseline_single_discount(const SelectionProblem& problem);

SelectionOutcome select_seeds(Algorithm algorithm, const SelectionProblem& problem,
                              const RandomSource& rng);

}  // namespace twophase
