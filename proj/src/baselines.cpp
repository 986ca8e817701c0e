#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "twophase/selection.hpp"

namespace twophase {

namespace {

constexpr double kNotEvaluated = std::numeric_limits<double>::quiet_NaN();

struct Scan {
  const SelectionProblem& problem;
  const MonteCarloEstimator& est;
  const NodeEconomics& econ;
  SelectionOutcome out;
  Cost remaining;

  explicit Scan(const SelectionProblem& p)
      : problem(p), est(*p.estimator), econ(*p.estimator->instance().economics),
        remaining(p.budget) {
    out.budget = p.budget;
  }

  // Budget gate, then the non-negative marginal gain gate.
  bool consider(NodeId u, std::size_t round) {
    const Cost cost = econ.cost(u);
    if (cost > remaining) {
      out.trace.push_back({round, u, kNotEvaluated, kNotEvaluated, {}, Decision::kRejectedBudget});
      return false;
    }
    const double gain = est.marginal_gain(out.seeds, u);
    const double ratio = gain / static_cast<double>(cost);
    if (gain < 0.0) {
      out.trace.push_back({round, u, gain, ratio, {}, Decision::kRejectedGain});
      return false;
    }
    out.trace.push_back({round, u, gain, ratio, {}, Decision::kAccepted});
    out.seeds.push_back(u);
    remaining -= cost;
    return true;
  }

  SelectionOutcome finish() {
    out.spent = problem.budget - remaining;
    out.remaining_budget = remaining;
    return std::move(out);
  }
};

template <typename Score>
SelectionOutcome scan_by_score(const SelectionProblem& problem, Score&& score) {
  problem.validate();
  Scan scan(problem);
  std::vector<NodeId> order = problem.candidates.members();
  std::vector<double> key(problem.candidates.capacity(), 0.0);
  for (NodeId u : order) key[u] = score(u);
  std::stable_sort(order.begin(), order.end(),
                   [&](NodeId a, NodeId b) { return key[a] > key[b]; });
  for (std::size_t i = 0; i < order.size(); ++i) scan.consider(order[i], i);
  return scan.finish();
}

}  // namespace

SelectionOutcome baseline_random(const SelectionProblem& problem, const RandomSource& rng) {
  problem.validate();
  const NodeEconomics& econ = *problem.estimator->instance().economics;
  SelectionOutcome out;
  out.budget = problem.budget;
  Cost remaining = problem.budget;
  std::vector<NodeId> order = problem.candidates.members();
  auto engine = rng.engine();
  std::shuffle(order.begin(), order.end(), engine);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const NodeId u = order[i];
    if (econ.cost(u) <= remaining) {
      out.seeds.push_back(u);
      remaining -= econ.cost(u);
      out.trace.push_back({i, u, kNotEvaluated, kNotEvaluated, {}, Decision::kAccepted});
    } else {
      out.trace.push_back({i, u, kNotEvaluated, kNotEvaluated, {}, Decision::kRejectedBudget});
    }
  }
  out.spent = problem.budget - remaining;
  out.remaining_budget = remaining;
  return out;
}

SelectionOutcome baseline_high_degree(const SelectionProblem& problem) {
  const GraphView& view = problem.estimator->instance().view;
  return scan_by_score(problem, [&](NodeId u) { return static_cast<double>(degree(view, u)); });
}

SelectionOutcome baseline_clustering_coefficient(const SelectionProblem& problem) {
  const GraphView& view = problem.estimator->instance().view;
  return scan_by_score(problem, [&](NodeId u) { return clustering_coefficient(view, u); });
}

SelectionOutcome baseline_single_discount(const SelectionProblem& problem) {
  problem.validate();
  const GraphView& view = problem.estimator->instance().view;
  const SocialGraph& g = view.base();
  Scan scan(problem);

  std::vector<NodeId> pending = problem.candidates.members();
  std::vector<std::int64_t> effective(view.capacity(), 0);
  for (NodeId u : pending) effective[u] = static_cast<std::int64_t>(degree(view, u));

  for (std::size_t round = 0; !pending.empty(); ++round) {
    // pending stays in ascending id order, so the first maximum wins ties.
    std::size_t best = 0;
    for (std::size_t i = 1; i < pending.size(); ++i) {
      if (effective[pending[i]] > effective[pending[best]]) best = i;
    }
    const NodeId u = pending[best];
    pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(best));
    if (scan.consider(u, round)) {
      for (NodeId v : g.out_neighbors(u)) {
        if (view.contains(v)) --effective[v];
      }
    }
  }
  return scan.finish();
}

SelectionOutcome select_seeds(Algorithm algorithm, const SelectionProblem& problem,
                              const RandomSource& rng) {
  switch (algorithm) {
    case Algorithm::kSingleGreedy:
      return single_greedy(problem);
    case Algorithm::kDoubleGreedy:
      return double_greedy(problem);
    case Algorithm::kRandom:
      return baseline_random(problem, rng);
    case Algorithm::kHighDegree:
      return baseline_high_degree(problem);
    case Algorithm::kClusteringCoefficient:
      return baseline_clustering_coefficient(problem);
    case Algorithm::kSingleDiscount:
      return baseline_single_discount(problem);
  }
  throw std::invalid_argument("unknown algorithm");
}

}  // namespace twophase
