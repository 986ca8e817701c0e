#include <doctest.h>

#include <array>
#include <vector>

#include "property_witnesses.hpp"
#include "twophase/profit.hpp"

using namespace twophase;

TEST_CASE("two-phase objective property witnesses exist") {
  const testing::Witnesses w = testing::search_witnesses();
  CHECK(w.negative);
  CHECK(w.positive);
  CHECK(w.decreasing);
  CHECK(w.increasing);
  CHECK(w.not_submodular);
  CHECK(w.not_supermodular);
  CHECK(w.not_subadditive);
  CHECK(w.not_superadditive);
}

TEST_CASE("profit alone is submodular on a fixed family") {
  // With no phase-II budget the objective is the profit, which is benefit
  // (a coverage function in expectation) minus a modular cost.
  const Edge e[] = {{0, 1, 0.5}, {1, 2, 0.5}, {0, 2, 0.5}, {2, 0, 1.0}};
  const SocialGraph g = build_graph(e, Directedness::kDirected);
  const NodeEconomics econ({4, 1, 12}, {10, 10, 10});
  std::array<double, 8> f{};
  for (int m = 0; m < 8; ++m) {
    std::vector<NodeId> s;
    for (NodeId v = 0; v < 3; ++v) {
      if (m >> v & 1) s.push_back(v);
    }
    f[m] = exact_profit(g, econ, s, NodeUniverse::all(3));
  }
  for (int s = 0; s < 8; ++s) {
    for (int t = s; t < 8; t = (t + 1) | s) {
      for (int u = 0; u < 3; ++u) {
        if (t >> u & 1) continue;
        CHECK(f[s | 1 << u] - f[s] >= f[t | 1 << u] - f[t] - 1e-9);
      }
    }
  }
}
