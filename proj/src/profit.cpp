#include <algorithm>
#include <cmath>
#include <string>

#include "twophase/parallel.hpp"
#include "twophase/profit.hpp"

namespace twophase {

ProfitInstance ProfitInstance::full(const SocialGraph& graph, const NodeEconomics& economics) {
  return {GraphView(graph), &economics, NodeUniverse::all(graph.node_count()), {}};
}

void ProfitInstance::validate() const {
  if (economics == nullptr) throw std::invalid_argument("profit instance has no economics table");
  economics->check_matches(view.base());
  if (benefit_universe.capacity() != view.capacity()) {
    throw std::invalid_argument("benefit universe does not match the graph's node set");
  }
  check_seeds(view, free_seeds);
}

ProfitEstimate summarize(std::span<const std::int64_t> samples) {
  ProfitEstimate est;
  est.replications = samples.size();
  if (samples.empty()) return est;
  std::int64_t sum = 0;
  for (std::int64_t x : samples) sum += x;
  const double n = static_cast<double>(samples.size());
  est.mean = static_cast<double>(sum) / n;
  if (samples.size() > 1) {
    double ss = 0.0;
    for (std::int64_t x : samples) {
      const double d = static_cast<double>(x) - est.mean;
      ss += d * d;
    }
    est.std_error = std::sqrt(ss / (n - 1.0) / n);
  }
  return est;
}

namespace {

std::uint64_t set_fingerprint(std::span<const NodeId> seeds) {
  std::vector<NodeId> sorted(seeds.begin(), seeds.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::uint64_t h = 0x6A09E667F3BCC909ull;
  for (NodeId v : sorted) h = splitmix64(h ^ v);
  return splitmix64(h ^ sorted.size());
}

}  // namespace

MonteCarloEstimator::MonteCarloEstimator(ProfitInstance instance, EstimatorConfig config,
                                         RandomSource rng)
    : instance_(std::move(instance)), config_(config), rng_(rng) {
  if (config_.replications < 1) throw std::invalid_argument("replications must be >= 1");
  instance_.validate();
  if (config_.common_random_numbers) {
    common_worlds_.resize(config_.replications);
    for (std::size_t r = 0; r < config_.replications; ++r) {
      common_worlds_[r] = rng_.derive("world", r).key();
    }
  }
}

std::uint64_t MonteCarloEstimator::world_key(std::size_t replication,
                                             std::span<const NodeId> seeds) const {
  if (config_.common_random_numbers) return rng_.derive("world", replication).key();
  return rng_.derive("world", replication).derive(set_fingerprint(seeds)).key();
}

std::vector<NodeId> MonteCarloEstimator::with_free_seeds(std::span<const NodeId> seeds) const {
  std::vector<NodeId> all(instance_.free_seeds.begin(), instance_.free_seeds.end());
  all.insert(all.end(), seeds.begin(), seeds.end());
  return all;
}

void MonteCarloEstimator::check_paid_seeds(std::span<const NodeId> seeds) const {
  check_seeds(instance_.view, seeds);
}

std::vector<std::int64_t> MonteCarloEstimator::per_world(std::span<const NodeId> seeds,
                                                         Measure measure) const {
  check_paid_seeds(seeds);
  const std::size_t n = config_.replications;
  std::vector<std::int64_t> samples(n, 0);
  const std::vector<NodeId> all = with_free_seeds(seeds);
  if (all.empty()) return samples;

  const std::uint8_t* universe = instance_.benefit_universe.mask().data();
  const Benefit* benefit = instance_.economics->benefits().data();
  std::vector<std::uint64_t> worlds;
  if (!config_.common_random_numbers) {
    const std::uint64_t fp = set_fingerprint(seeds);
    worlds.resize(n);
    for (std::size_t r = 0; r < n; ++r) worlds[r] = rng_.derive("world", r).derive(fp).key();
  }
  const std::vector<std::uint64_t>& keys = config_.common_random_numbers ? common_worlds_ : worlds;

  parallel_for(n, config_.threads, [&](std::size_t begin, std::size_t end, unsigned) {
    CascadeSimulator sim(instance_.view);
    for (std::size_t r = begin; r < end; ++r) {
      std::int64_t acc = 0;
      if (measure == Measure::kBenefit) {
        sim.run(all, keys[r], kToFixpoint, [&](NodeId v, std::size_t) {
          if (universe[v]) acc += benefit[v];
        });
      } else {
        sim.run(all, keys[r], kToFixpoint, [&](NodeId v, std::size_t) {
          if (universe[v]) ++acc;
        });
      }
      samples[r] = acc;
    }
  });
  return samples;
}

ProfitEstimate MonteCarloEstimator::influence(std::span<const NodeId> seeds) const {
  return summarize(per_world(seeds, Measure::kCount));
}

ProfitEstimate MonteCarloEstimator::benefit(std::span<const NodeId> seeds) const {
  return summarize(per_world(seeds, Measure::kBenefit));
}

ProfitEstimate MonteCarloEstimator::profit(std::span<const NodeId> seeds) const {
  ProfitEstimate est = benefit(seeds);
  est.mean -= static_cast<double>(seed_cost(*instance_.economics, seeds));
  return est;
}

double MonteCarloEstimator::marginal_gain(std::span<const NodeId> base, NodeId u) const {
  const NodeId one[] = {u};
  return marginal_gains(base, one).front();
}

std::vector<double> MonteCarloEstimator::marginal_gains(std::span<const NodeId> base,
                                                        std::span<const NodeId> candidates) const {
  check_paid_seeds(base);
  check_paid_seeds(candidates);
  for (NodeId u : candidates) {
    if (std::find(base.begin(), base.end(), u) != base.end()) {
      throw std::invalid_argument("node " + std::to_string(u) + " is already in the seed set");
    }
  }
  const NodeEconomics& econ = *instance_.economics;
  std::vector<double> gains(candidates.size(), 0.0);
  if (candidates.empty()) return gains;

  if (!config_.common_random_numbers) {
    const double without = profit(base).mean;
    std::vector<NodeId> extended(base.begin(), base.end());
    extended.push_back(0);
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      extended.back() = candidates[i];
      gains[i] = profit(extended).mean - without;
    }
    return gains;
  }

  const std::vector<NodeId> all = with_free_seeds(base);
  const std::uint8_t* universe = instance_.benefit_universe.mask().data();
  const Benefit* benefit = econ.benefits().data();
  std::vector<std::int64_t> extra(candidates.size(), 0);

  parallel_for(candidates.size(), config_.threads,
               [&](std::size_t begin, std::size_t end, unsigned) {
                 CascadeSimulator sim(instance_.view);
                 for (std::uint64_t world : common_worlds_) {
                   sim.run(all, world, kToFixpoint, [](NodeId, std::size_t) {});
                   for (std::size_t i = begin; i < end; ++i) {
                     std::int64_t acc = 0;
                     sim.probe(candidates[i], world, [&](NodeId v, std::size_t) {
                       if (universe[v]) acc += benefit[v];
                     });
                     extra[i] += acc;
                   }
                 }
               });

  const double n = static_cast<double>(config_.replications);
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    gains[i] = static_cast<double>(extra[i]) / n - static_cast<double>(econ.cost(candidates[i]));
  }
  return gains;
}

ProfitEstimate estimate_influence(const GraphView& view, std::span<const NodeId> seeds,
                                  const EstimatorConfig& config, const RandomSource& rng) {
  // Influence does not look at economics; a unit table satisfies the instance.
  const std::size_t n = view.capacity();
  const NodeEconomics unit(std::vector<Cost>(n, 1), std::vector<Benefit>(n, 1));
  MonteCarloEstimator est({view, &unit, NodeUniverse::all(n), {}}, config, rng);
  return est.influence(seeds);
}

ProfitEstimate estimate_profit(const GraphView& view, const NodeEconomics& economics,
                               std::span<const NodeId> seeds, const NodeUniverse& universe,
                               const EstimatorConfig& config, const RandomSource& rng) {
  MonteCarloEstimator est({view, &economics, universe, {}}, config, rng);
  return est.profit(seeds);
}

double marginal_profit_gain(const GraphView& view, const NodeEconomics& economics,
                            std::span<const NodeId> base, NodeId u, const NodeUniverse& universe,
                            const EstimatorConfig& config, const RandomSource& rng) {
  MonteCarloEstimator est({view, &economics, universe, {}}, config, rng);
  return est.marginal_gain(base, u);
}

}  // namespace twophase
