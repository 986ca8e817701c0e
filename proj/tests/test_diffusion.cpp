#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "twophase/diffusion.hpp"

using namespace twophase;

namespace {

SocialGraph chain(std::size_t n, double p) {
  std::vector<Edge> e;
  for (NodeId i = 0; i + 1 < n; ++i) e.push_back({i, i + 1, p});
  return build_graph(e, Directedness::kDirected, n);
}

SocialGraph diamond(double p) {
  const Edge e[] = {{0, 1, p}, {0, 2, p}, {1, 3, p}, {2, 3, p}};
  return build_graph(e, Directedness::kDirected);
}

SocialGraph random_graph(std::mt19937_64& rng, std::size_t max_nodes, std::size_t max_arcs) {
  const std::size_t n = 2 + rng() % (max_nodes - 1);
  const std::size_t m = rng() % (max_arcs + 1);
  std::vector<Edge> e;
  for (std::size_t i = 0; i < m; ++i) {
    const auto a = static_cast<NodeId>(rng() % n), b = static_cast<NodeId>(rng() % n);
    if (a != b) e.push_back({a, b, 0.1 * static_cast<double>(1 + rng() % 9)});
  }
  return build_graph(e, Directedness::kDirected, n);
}

const std::vector<NodeId> kSeed0{0};

}  // namespace

TEST_CASE("simulate_ic: empty seeds") {
  const SocialGraph g = chain(3, 1.0);
  const DiffusionTrace t = simulate_ic(g, {}, RandomSource(1));
  CHECK(t.final_active.empty());
}

TEST_CASE("simulate_ic: certain arc") {
  const Edge e[] = {{0, 1, 1.0}};
  const SocialGraph g = build_graph(e, Directedness::kDirected);
  const DiffusionTrace t = simulate_ic(g, kSeed0, RandomSource(1));
  CHECK(t.final_active == std::vector<NodeId>{0, 1});
  REQUIRE(t.steps.size() == 2);
  CHECK(t.steps[0] == std::vector<NodeId>{0});
  CHECK(t.steps[1] == std::vector<NodeId>{1});
}

TEST_CASE("simulate_ic: horizon truncates the cascade") {
  const SocialGraph g = chain(5, 1.0);
  const DiffusionTrace t = simulate_ic(g, kSeed0, RandomSource(1), 2);
  CHECK(t.final_active == std::vector<NodeId>{0, 1, 2});
}

TEST_CASE("simulate_ic: seeds outside the view are rejected") {
  const SocialGraph g = chain(3, 1.0);
  const NodeId r[] = {0};
  CHECK_THROWS_AS(simulate_ic(exclude_nodes(g, r), kSeed0, RandomSource(1)), std::invalid_argument);
  const std::vector<NodeId> bad{5};
  CHECK_THROWS_AS(simulate_ic(g, bad, RandomSource(1)), std::invalid_argument);
}

TEST_CASE("simulate_ic: binomial oracle on one arc") {
  const Edge e[] = {{0, 1, 0.5}};
  const SocialGraph g = build_graph(e, Directedness::kDirected);
  const RandomSource root(2024);
  const int n = 100000;
  int hits = 0;
  for (int r = 0; r < n; ++r) hits += simulate_ic(g, kSeed0, root.derive("w", r)).final_active.size() == 2;
  const double se = std::sqrt(0.25 / n);
  CHECK(std::abs(hits / double(n) - 0.5) <= 3 * se);
}

TEST_CASE("simulate_ic: each step is the frontier of the previous one") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const SocialGraph g = random_graph(rng, 12, 30);
    const DiffusionTrace t = simulate_ic(g, kSeed0, RandomSource(rng()));
    std::vector<std::uint8_t> seen(g.node_count(), 0);
    std::size_t total = 0;
    for (std::size_t s = 0; s < t.steps.size(); ++s) {
      CHECK_FALSE(t.steps[s].empty());
      for (NodeId v : t.steps[s]) {
        CHECK_FALSE(seen[v]);
        seen[v] = 1;
        ++total;
        if (s == 0) continue;
        bool has_parent = false;
        for (NodeId u : g.in_neighbors(v)) {
          has_parent |= std::find(t.steps[s - 1].begin(), t.steps[s - 1].end(), u) != t.steps[s - 1].end();
        }
        CHECK(has_parent);
      }
    }
    CHECK(total == t.final_active.size());
  }
}

TEST_CASE("simulate_ic follows the live graph of its world key") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const SocialGraph g = random_graph(rng, 8, 14);
    const RandomSource world(rng());
    std::uint64_t kept = 0;
    const LiveGraphSpace space(g);
    for (std::size_t i = 0; i < space.arc_count(); ++i) {
      const ArcId a = space.arcs()[i];
      if (kernels::arc_live(world.key(), a, g.thresholds()[a])) kept |= std::uint64_t{1} << i;
    }
    const auto live = space.live_graph(kept);
    const DiffusionTrace t = simulate_ic(g, kSeed0, world);
    CHECK(t.final_active == space.reachable(live, kSeed0));
    const auto layers = space.layers(live, kSeed0);
    CHECK(layers == t.steps);
  }
}

TEST_CASE("observe_until") {
  const SocialGraph g = chain(3, 1.0);
  SUBCASE("d = 0") {
    const auto o = observe_until(g, kSeed0, 0, RandomSource(1));
    CHECK(o.already_active == std::vector<NodeId>{0});
    CHECK(o.newly_active == std::vector<NodeId>{0});
  }
  SUBCASE("d = 1") {
    const auto o = observe_until(g, kSeed0, 1, RandomSource(1));
    CHECK(o.already_active == std::vector<NodeId>{0, 1});
    CHECK(o.newly_active == std::vector<NodeId>{1});
  }
  SUBCASE("fixpoint before d") {
    const auto o = observe_until(g, kSeed0, 5, RandomSource(1));
    CHECK(o.already_active == std::vector<NodeId>{0, 1, 2});
    CHECK(o.newly_active.empty());
  }
  SUBCASE("R_Y is a subset of A_Y") {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 100; ++trial) {
      const SocialGraph r = random_graph(rng, 10, 25);
      const auto o = observe_until(r, kSeed0, 1 + rng() % 4, RandomSource(rng()));
      for (NodeId v : o.newly_active) {
        CHECK(std::binary_search(o.already_active.begin(), o.already_active.end(), v));
      }
    }
  }
}

TEST_CASE("enumerate_live_graphs") {
  SUBCASE("no arcs") {
    const SocialGraph g = build_graph({}, Directedness::kDirected, 2);
    const auto lg = enumerate_live_graphs(g);
    REQUIRE(lg.size() == 1);
    CHECK(lg[0].generation_probability == 1.0);
  }
  SUBCASE("one arc") {
    const Edge e[] = {{0, 1, 0.3}};
    const auto lg = enumerate_live_graphs(build_graph(e, Directedness::kDirected));
    REQUIRE(lg.size() == 2);
    CHECK(lg[0].generation_probability == doctest::Approx(0.7));
    CHECK(lg[1].generation_probability == doctest::Approx(0.3));
  }
  SUBCASE("three arcs sum to one") {
    const Edge e[] = {{0, 1, 0.3}, {1, 2, 0.6}, {2, 0, 0.25}};
    const auto lg = enumerate_live_graphs(build_graph(e, Directedness::kDirected));
    CHECK(lg.size() == 8);
    double total = 0;
    for (const auto& l : lg) total += l.generation_probability;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("limit") {
    const SocialGraph g = chain(30, 0.5);
    CHECK_THROWS_AS(enumerate_live_graphs(g), EnumerationLimitError);
    CHECK(LiveGraphSpace(g, 29).world_count() == (std::uint64_t{1} << 29));
  }
}

TEST_CASE("reachable_set") {
  const SocialGraph d = diamond(0.5);
  const LiveGraphSpace space(d);
  SUBCASE("nothing kept") { CHECK(reachable_set(space, space.live_graph(0), kSeed0) == kSeed0); }
  SUBCASE("everything kept on a chain") {
    const SocialGraph c = chain(4, 0.5);
    const LiveGraphSpace cs(c);
    CHECK(reachable_set(cs, cs.live_graph(0b111), kSeed0) == std::vector<NodeId>{0, 1, 2, 3});
  }
  SUBCASE("diamond with 0->1 and 1->3 kept") {
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < space.arc_count(); ++i) {
      const Arc a = d.arc(space.arcs()[i]);
      if ((a.source == 0 && a.target == 1) || (a.source == 1 && a.target == 3)) mask |= 1u << i;
    }
    CHECK(reachable_set(space, space.live_graph(mask), kSeed0) == std::vector<NodeId>{0, 1, 3});
  }
}

TEST_CASE("live-graph space respects excluded nodes") {
  const SocialGraph d = diamond(0.5);
  const NodeId r[] = {1};
  const LiveGraphSpace space(exclude_nodes(d, r));
  CHECK(space.arc_count() == 2);
  CHECK(space.reachable(space.live_graph(0b11), kSeed0) == std::vector<NodeId>{0, 2, 3});
}

TEST_CASE("Monte Carlo influence matches enumeration on random graphs") {
  std::mt19937_64 rng(91);
  const RandomSource root(5);
  for (int trial = 0; trial < 8; ++trial) {
    const SocialGraph g = random_graph(rng, 6, 12);
    const LiveGraphSpace space(g);
    double exact = 0;
    space.for_each([&](const LiveGraph& l) {
      exact += l.generation_probability * static_cast<double>(space.reachable(l, kSeed0).size());
    });
    const int n = 200000;
    double sum = 0, sq = 0;
    for (int r = 0; r < n; ++r) {
      const double x = static_cast<double>(simulate_ic(g, kSeed0, root.derive("t", trial).derive("w", r)).final_active.size());
      sum += x;
      sq += x * x;
    }
    const double mean = sum / n;
    const double se = std::sqrt(std::max(0.0, sq / n - mean * mean) / n);
    CHECK(std::abs(mean - exact) <= 3 * se + 1e-12);
  }
}
