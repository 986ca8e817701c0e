#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "twophase/selection.hpp"

namespace twophase {

namespace {
constexpr double kNotEvaluated = std::numeric_limits<double>::quiet_NaN();
}  // namespace

std::string_view algorithm_name(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kSingleGreedy:
      return "single_greedy";
    case Algorithm::kDoubleGreedy:
      return "double_greedy";
    case Algorithm::kRandom:
      return "random";
    case Algorithm::kHighDegree:
      return "high_degree";
    case Algorithm::kClusteringCoefficient:
      return "clustering_coefficient";
    case Algorithm::kSingleDiscount:
      return "single_discount";
  }
  return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  for (Algorithm a : kAllAlgorithms) {
    if (algorithm_name(a) == name) return a;
  }
  return std::nullopt;
}

std::string_view decision_name(Decision decision) {
  switch (decision) {
    case Decision::kEvaluated:
      return "evaluated";
    case Decision::kAccepted:
      return "accepted";
    case Decision::kRejectedBudget:
      return "rejected_budget";
    case Decision::kRejectedGain:
      return "rejected_gain";
    case Decision::kStopped:
      return "stopped";
  }
  return "unknown";
}

std::vector<NodeId> SelectionOutcome::sorted_seeds() const {
  std::vector<NodeId> out = seeds;
  std::sort(out.begin(), out.end());
  return out;
}

SelectionProblem SelectionProblem::over_view(const MonteCarloEstimator& estimator, Cost budget) {
  return {&estimator, estimator.instance().view.universe(), budget};
}

void SelectionProblem::validate() const {
  if (estimator == nullptr) throw std::invalid_argument("selection problem has no estimator");
  if (budget < 0) throw std::invalid_argument("budget must be non-negative");
  const GraphView& view = estimator->instance().view;
  if (candidates.capacity() != view.capacity()) {
    throw std::invalid_argument("candidate universe does not match the graph");
  }
  for (NodeId u : candidates.members()) {
    if (!view.contains(u)) {
      throw std::invalid_argument("candidate " + std::to_string(u) + " lies outside the view");
    }
  }
}

SelectionOutcome single_greedy(const SelectionProblem& problem) {
  problem.validate();
  const MonteCarloEstimator& est = *problem.estimator;
  const NodeEconomics& econ = *est.instance().economics;

  SelectionOutcome out;
  out.budget = problem.budget;
  Cost remaining = problem.budget;
  std::vector<NodeId> pool = problem.candidates.members();

  for (std::size_t round = 0;; ++round) {
    // A node that does not fit now never fits later: the budget only shrinks.
    std::vector<NodeId> affordable;
    for (NodeId u : pool) {
      if (econ.cost(u) > remaining) {
        out.trace.push_back({round, u, kNotEvaluated, kNotEvaluated, {}, Decision::kRejectedBudget});
      } else {
        affordable.push_back(u);
      }
    }
    pool = std::move(affordable);
    if (pool.empty()) break;

    const std::vector<double> gains = est.marginal_gains(out.seeds, pool);
    std::size_t best = 0;
    double best_ratio = -std::numeric_limits<double>::infinity();
    const std::size_t first_entry = out.trace.size();
    for (std::size_t i = 0; i < pool.size(); ++i) {
      const double ratio = gains[i] / static_cast<double>(econ.cost(pool[i]));
      out.trace.push_back({round, pool[i], gains[i], ratio, {}, Decision::kEvaluated});
      if (ratio > best_ratio) {
        best_ratio = ratio;
        best = i;
      }
    }
    AuditEntry& chosen = out.trace[first_entry + best];
    if (gains[best] <= 0.0) {
      chosen.decision = Decision::kStopped;
      break;
    }
    chosen.decision = Decision::kAccepted;
    out.seeds.push_back(pool[best]);
    remaining -= econ.cost(pool[best]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(best));
  }

  out.spent = problem.budget - remaining;
  out.remaining_budget = remaining;
  return out;
}

SelectionOutcome double_greedy(const SelectionProblem& problem) {
  problem.validate();
  const MonteCarloEstimator& est = *problem.estimator;
  const NodeEconomics& econ = *est.instance().economics;

  SelectionOutcome out;
  out.budget = problem.budget;
  Cost remaining = problem.budget;
  const std::vector<NodeId> order = problem.candidates.members();
  std::vector<NodeId> upper = order;
  double upper_profit = est.profit(upper).mean;

  for (std::size_t round = 0; round < order.size(); ++round) {
    const NodeId u = order[round];
    const double cost = static_cast<double>(econ.cost(u));
    const double add_gain = est.marginal_gain(out.seeds, u);

    std::vector<NodeId> shrunk;
    shrunk.reserve(upper.size());
    for (NodeId v : upper) {
      if (v != u) shrunk.push_back(v);
    }
    const double shrunk_profit = est.profit(shrunk).mean;

    GainRatioPair ratios;
    ratios.add_ratio = add_gain / cost;
    ratios.remove_ratio = -(shrunk_profit - upper_profit) / cost;

    Decision decision;
    if (ratios.add_ratio >= ratios.remove_ratio && econ.cost(u) <= remaining) {
      out.seeds.push_back(u);
      remaining -= econ.cost(u);
      decision = Decision::kAccepted;
    } else {
      upper = std::move(shrunk);
      upper_profit = shrunk_profit;
      decision = ratios.add_ratio >= ratios.remove_ratio ? Decision::kRejectedBudget
                                                         : Decision::kRejectedGain;
    }
    out.trace.push_back({round, u, add_gain, ratios.add_ratio, ratios, decision});
  }

  out.upper_set = std::move(upper);
  out.spent = problem.budget - remaining;
  out.remaining_budget = remaining;
  return out;
}

}  // namespace twophase
