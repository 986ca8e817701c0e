#include <doctest.h>

#include <random>

#include "twophase/graph.hpp"

using namespace twophase;

namespace {

SocialGraph path3() {
  const Edge e[] = {{0, 1, 1.0}, {1, 2, 1.0}};
  return build_graph(e, Directedness::kDirected);
}

}  // namespace

TEST_CASE("build_graph: empty input") {
  const SocialGraph g = build_graph({}, Directedness::kDirected);
  CHECK(g.node_count() == 0);
  CHECK(g.arc_count() == 0);
}

TEST_CASE("build_graph: undirected edge stored as two arcs") {
  const Edge e[] = {{0, 1, 0.5}};
  const SocialGraph g = build_graph(e, Directedness::kUndirected);
  REQUIRE(g.arc_count() == 2);
  CHECK(g.arc(0) == Arc{0, 1, 0.5});
  CHECK(g.arc(1) == Arc{1, 0, 0.5});
}

TEST_CASE("build_graph: rejects bad probabilities and self-loops") {
  const Edge high[] = {{0, 1, 1.2}};
  const Edge zero[] = {{0, 1, 0.0}};
  const Edge loop[] = {{2, 2, 0.5}};
  CHECK_THROWS_AS(build_graph(high, Directedness::kDirected), std::invalid_argument);
  CHECK_THROWS_AS(build_graph(zero, Directedness::kDirected), std::invalid_argument);
  CHECK_THROWS_AS(build_graph(loop, Directedness::kDirected), std::invalid_argument);
}

TEST_CASE("build_graph: duplicates collapse to the first occurrence") {
  const Edge e[] = {{0, 1, 0.3}, {1, 0, 0.9}, {0, 1, 0.7}, {2, 1, 0.5}};
  BuildStats stats;
  const SocialGraph d = build_graph(e, Directedness::kDirected, 0, &stats);
  CHECK(d.arc_count() == 3);
  CHECK(stats.duplicate_edges == 1);
  CHECK(d.arc(d.first_arc(0)).probability == 0.3);

  const SocialGraph u = build_graph(e, Directedness::kUndirected, 0, &stats);
  CHECK(u.arc_count() == 4);
  CHECK(stats.duplicate_edges == 2);
}

TEST_CASE("build_graph: node count covers min_node_count and in-neighbours") {
  const Edge e[] = {{3, 1, 0.5}, {0, 1, 0.5}};
  const SocialGraph g = build_graph(e, Directedness::kDirected, 6);
  CHECK(g.node_count() == 6);
  const auto in = g.in_neighbors(1);
  CHECK(std::vector<NodeId>(in.begin(), in.end()) == std::vector<NodeId>{0, 3});
  CHECK(g.out_degree(5) == 0);
  CHECK_THROWS_AS(g.check_node(6), std::out_of_range);
}

TEST_CASE("arc count is twice the edge count for undirected input") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Edge> edges;
    std::uniform_int_distribution<NodeId> node(0, 9);
    for (int i = 0; i < 20; ++i) {
      const NodeId a = node(rng), b = node(rng);
      if (a != b) edges.push_back({a, b, 0.5});
    }
    BuildStats stats;
    const SocialGraph d = build_graph(edges, Directedness::kDirected, 0, &stats);
    CHECK(d.arc_count() == edges.size() - stats.duplicate_edges);
    const SocialGraph u = build_graph(edges, Directedness::kUndirected, 0, &stats);
    CHECK(u.arc_count() == 2 * (edges.size() - stats.duplicate_edges));
  }
}

TEST_CASE("probability_threshold maps 1 to the full range") {
  CHECK(probability_threshold(1.0) == 0xFFFFFFFFu);
  CHECK(probability_threshold(0.5) == 0x7FFFFFFFu);
}

TEST_CASE("seed_cost") {
  const NodeEconomics econ({50, 100, 7}, {1, 1, 1});
  CHECK(seed_cost(econ, std::vector<NodeId>{}) == 0);
  CHECK(seed_cost(econ, std::vector<NodeId>{0}) == 50);
  CHECK(seed_cost(econ, std::vector<NodeId>{0, 1}) == 150);
  CHECK(seed_cost(econ, std::vector<NodeId>{1, 1}) == 100);
  CHECK_THROWS_AS(seed_cost(econ, std::vector<NodeId>{3}), std::out_of_range);
}

TEST_CASE("NodeEconomics validation") {
  CHECK_THROWS_AS(NodeEconomics({1, 2}, {1}), std::invalid_argument);
  CHECK_THROWS_AS(NodeEconomics({0}, {1}), std::invalid_argument);
  CHECK_THROWS_AS(NodeEconomics({1}, {0}), std::invalid_argument);
  const NodeEconomics econ({1, 1}, {2, 2});
  CHECK_THROWS_AS(econ.check_matches(path3()), std::invalid_argument);
}

TEST_CASE("exclude_nodes") {
  const SocialGraph g = path3();
  SUBCASE("nothing removed") {
    const GraphView v = exclude_nodes(g, {});
    CHECK(same_view(v, GraphView(g)));
    CHECK(v.node_count() == 3);
    CHECK(v.arc_ids().size() == 2);
  }
  SUBCASE("middle of a path") {
    const NodeId removed[] = {1};
    const GraphView v = exclude_nodes(g, removed);
    CHECK(v.nodes() == std::vector<NodeId>{0, 2});
    CHECK(v.arc_ids().empty());
    CHECK(v.universe() == NodeUniverse::of(3, std::vector<NodeId>{0, 2}));
  }
  SUBCASE("everything") {
    const NodeId removed[] = {0, 1, 2};
    const GraphView v = exclude_nodes(g, removed);
    CHECK(v.node_count() == 0);
    CHECK(v.nodes().empty());
  }
  SUBCASE("views compose and share storage") {
    const NodeId r0[] = {0};
    const NodeId r2[] = {2};
    const GraphView v = exclude_nodes(exclude_nodes(g, r0), r2);
    CHECK(v.nodes() == std::vector<NodeId>{1});
    CHECK(&v.base() == &g);
  }
  SUBCASE("unknown id") {
    const NodeId bad[] = {9};
    CHECK_THROWS_AS(exclude_nodes(g, bad), std::out_of_range);
  }
}

TEST_CASE("degree and clustering coefficient") {
  // Triangle 0-1-2, star centre 3 with leaves 4,5,6, isolated 7.
  const Edge e[] = {{0, 1, 0.5}, {1, 2, 0.5}, {0, 2, 0.5},
                    {3, 4, 0.5}, {3, 5, 0.5}, {3, 6, 0.5}};
  const SocialGraph g = build_graph(e, Directedness::kUndirected, 8);
  CHECK(degree(g, 7) == 0);
  CHECK(clustering_coefficient(g, 7) == 0.0);
  CHECK(clustering_coefficient(g, 0) == 1.0);
  CHECK(clustering_coefficient(g, 3) == 0.0);
  CHECK(degree(g, 3) == 3);

  const NodeId removed[] = {4};
  CHECK(degree(exclude_nodes(g, removed), 3) == 2);
  const NodeId r2[] = {2};
  CHECK(clustering_coefficient(exclude_nodes(g, r2), 0) == 0.0);
}

TEST_CASE("clustering coefficient of a directed graph uses the undirected skeleton") {
  const Edge e[] = {{0, 1, 0.5}, {2, 0, 0.5}, {1, 2, 0.5}, {0, 3, 0.5}};
  const SocialGraph g = build_graph(e, Directedness::kDirected);
  CHECK(clustering_coefficient(g, 0) == doctest::Approx(1.0 / 3.0));
  CHECK(degree(g, 0) == 2);
}

TEST_CASE("NodeUniverse") {
  NodeUniverse u = NodeUniverse::none(5);
  CHECK(u.size() == 0);
  u.insert(3);
  u.insert(1);
  CHECK(u.members() == std::vector<NodeId>{1, 3});
  CHECK(NodeUniverse::all(5).without(std::vector<NodeId>{0, 2, 4}) == u);
  u.erase(3);
  CHECK(u.size() == 1);
  CHECK_FALSE(u.contains(7));
}
