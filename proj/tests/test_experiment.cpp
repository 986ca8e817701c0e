#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "twophase/dataset.hpp"
#include "twophase/experiment.hpp"

using namespace twophase;
namespace fs = std::filesystem;

namespace {

const fs::path kData = TWOPHASE_TEST_DATA_DIR;

LoadOptions directed() { return {}; }

LoadOptions undirected() {
  LoadOptions o;
  o.directedness = Directedness::kUndirected;
  return o;
}

BatchConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_batch_config(in, kData);
}

const char* kSmallBatch =
    "dataset = synthetic:pa:40:2:3\n"
    "probability = 0.1\n"
    "algorithms = single_greedy, random\n"
    "budgets = 200,300,400\n"
    "phase1_observations = 8\n"
    "phase2_runs = 20\n"
    "selection_replications = 20\n"
    "single_phase_replications = 200\n"
    "master_seed = 5\n";

std::string csv_of(const std::vector<ExperimentRecord>& records) {
  std::ostringstream os;
  write_csv(os, records);
  return os.str();
}

}  // namespace

TEST_CASE("loader: fixture counts") {
  SUBCASE("three lines with a comment") {
    const LoadedDataset d = load_snap_edge_list(kData / "three-lines.txt", directed());
    CHECK(d.stats.unique_edges == 2);
    CHECK(d.stats.comment_lines == 1);
    CHECK(d.graph.node_count() == 3);
  }
  SUBCASE("email-style, undirected, with self-loops") {
    const LoadedDataset d = load_snap_edge_list(kData / "email-Eu-core-head.txt", undirected());
    CHECK(d.graph.node_count() == 24);
    CHECK(d.stats.unique_edges == 50);
    CHECK(d.stats.self_loops == 4);
    CHECK(d.stats.edge_lines == 60);
    CHECK(d.graph.arc_count() == 2 * (50 - 4));
  }
  SUBCASE("wiki-style, directed, SNAP header") {
    const LoadedDataset d = load_snap_edge_list(kData / "wiki-Vote-head.txt", directed());
    CHECK(d.graph.node_count() == 15);
    CHECK(d.stats.unique_edges == 42);
    CHECK(d.stats.comment_lines == 4);
    CHECK(d.original_ids.front() == 3);
    CHECK(d.original_ids.back() == 349);
  }
  SUBCASE("bitcoin-style CSV with CRLF") {
    const LoadedDataset d = load_snap_edge_list(kData / "soc-sign-bitcoinalpha-head.csv", directed());
    CHECK(d.graph.node_count() == 27);
    CHECK(d.stats.unique_edges == 38);
  }
}

TEST_CASE("loader: probabilities") {
  const LoadedDataset d = load_snap_edge_list(kData / "three-lines.txt", directed());
  for (ArcId a = 0; a < d.graph.arc_count(); ++a) CHECK(d.graph.arc_probability(a) == 0.01);
  std::istringstream in("0 1 0.25\n1 2 1\n");
  LoadOptions o;
  o.uniform_probability.reset();
  const LoadedDataset p = parse_edge_list(in, o);
  CHECK(p.graph.arc_probability(0) == 0.25);
  CHECK(p.graph.arc_probability(1) == 1.0);
}

TEST_CASE("loader: errors and edge cases") {
  SUBCASE("malformed line reports its number") {
    std::istringstream in("# header\n0 1\n2 x\n");
    try {
      parse_edge_list(in, directed(), "mem");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
      CHECK(std::string(e.what()).find("mem:3") == 0);
    }
  }
  SUBCASE("single column") {
    std::istringstream in("5\n");
    CHECK_THROWS_AS(parse_edge_list(in, directed()), ParseError);
  }
  SUBCASE("missing probability column") {
    std::istringstream in("0 1\n");
    LoadOptions o;
    o.uniform_probability.reset();
    CHECK_THROWS_AS(parse_edge_list(in, o), ParseError);
  }
  SUBCASE("empty input") {
    std::istringstream in("# only a comment\n\n");
    const LoadedDataset d = parse_edge_list(in, directed());
    CHECK(d.stats.empty);
    CHECK(d.graph.node_count() == 0);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(load_snap_edge_list(kData / "missing.txt", directed()), std::runtime_error);
  }
  SUBCASE("ids kept without remapping") {
    std::istringstream in("4 7\n");
    LoadOptions o;
    o.remap_ids = false;
    const LoadedDataset d = parse_edge_list(in, o);
    CHECK(d.graph.node_count() == 8);
    CHECK(d.graph.arc(0) == Arc{4, 7, 0.01});
  }
}

TEST_CASE("loader: loading twice yields identical graphs") {
  const LoadedDataset a = load_snap_edge_list(kData / "email-Eu-core-head.txt", undirected());
  const LoadedDataset b = load_snap_edge_list(kData / "email-Eu-core-head.txt", undirected());
  REQUIRE(a.graph.arc_count() == b.graph.arc_count());
  for (ArcId i = 0; i < a.graph.arc_count(); ++i) CHECK(a.graph.arc(i) == b.graph.arc(i));
  CHECK(a.original_ids == b.original_ids);
}

TEST_CASE("summarize_dataset: average degree is 2E/N") {
  const LoadedDataset d = load_snap_edge_list(kData / "three-lines.txt", directed());
  const DatasetSummary s = summarize_dataset(d);
  CHECK(s.average_degree == doctest::Approx(4.0 / 3.0));
  CHECK(s.max_degree == 2);
}

TEST_CASE("generate_attributes") {
  const SocialGraph g = build_graph({}, Directedness::kDirected, 500);
  SUBCASE("degenerate range") {
    const NodeEconomics e = generate_attributes(g, {50, 50, 800, 1000, 1});
    for (Cost c : e.costs()) CHECK(c == 50);
  }
  SUBCASE("deterministic and in range") {
    const NodeEconomics a = generate_attributes(g, {});
    const NodeEconomics b = generate_attributes(g, {});
    CHECK(std::equal(a.costs().begin(), a.costs().end(), b.costs().begin()));
    CHECK(std::equal(a.benefits().begin(), a.benefits().end(), b.benefits().begin()));
    for (Cost c : a.costs()) CHECK((c >= 50 && c <= 100));
    for (Benefit v : a.benefits()) CHECK((v >= 800 && v <= 1000));
    const auto [lo, hi] = std::minmax_element(a.benefits().begin(), a.benefits().end());
    CHECK(*lo < 820);
    CHECK(*hi > 980);
  }
  SUBCASE("different seeds differ") {
    const NodeEconomics a = generate_attributes(g, {50, 100, 800, 1000, 1});
    const NodeEconomics b = generate_attributes(g, {50, 100, 800, 1000, 2});
    CHECK_FALSE(std::equal(a.costs().begin(), a.costs().end(), b.costs().begin()));
  }
  SUBCASE("invalid ranges") {
    CHECK_THROWS_AS(generate_attributes(g, {0, 10, 1, 1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(generate_attributes(g, {10, 5, 1, 1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(generate_attributes(g, {1, 1, 9, 8, 1}), std::invalid_argument);
  }
}

TEST_CASE("preferential attachment fixture") {
  const auto a = preferential_attachment_edges(200, 3, 0.01, 7);
  CHECK(a.size() == 6 + (200 - 4) * 3);
  const SocialGraph g = build_graph(a, Directedness::kUndirected, 200);
  CHECK(g.arc_count() == 2 * a.size());
  const auto b = preferential_attachment_edges(200, 3, 0.01, 7);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].source == b[i].source);
    CHECK(a[i].target == b[i].target);
  }
}

TEST_CASE("batch config parsing") {
  const BatchConfig c = parse(std::string(kSmallBatch) + "# trailing comment\nsplit = 0.5 # inline\n");
  CHECK(c.algorithms == std::vector<Algorithm>{Algorithm::kSingleGreedy, Algorithm::kRandom});
  CHECK(c.budgets == std::vector<Cost>{200, 300, 400});
  CHECK(c.split == 0.5);
  CHECK(c.observation_step == 3);
  CHECK(c.attributes.seed == 5);
  CHECK(c.name == "synthetic:pa:40:2:3");

  CHECK_THROWS_AS(parse("dataset = x\nalgorithms = celf\nbudgets = 1\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse("dataset = x\nalgorithms = random\nbudgets = 1\nbogus = 2\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse("algorithms = random\nbudgets = 1\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse("dataset = x\nalgorithms = random\nbudgets = 1,z\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse("dataset x\n"), std::invalid_argument);
  try {
    parse("dataset = x\nd = 0\nalgorithms = random\nbudgets = 1\n");
    FAIL("expected invalid_argument");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("d must be") != std::string::npos);
  }
}

TEST_CASE("dataset path resolution") {
  const BatchConfig c = parse("dataset = three-lines.txt\nalgorithms = random\nbudgets = 100\n");
  CHECK(resolve_dataset_path(c) == kData / "three-lines.txt");
  CHECK(prepare_instance(c).dataset.graph.node_count() == 3);
  CHECK(c.name == "three-lines");

  ::setenv("TWOPHASE_DATA_ROOT", "/nonexistent-root", 1);
  CHECK(resolve_dataset_path(c) == fs::path("/nonexistent-root/three-lines.txt"));
  CHECK_THROWS_AS(prepare_instance(c), std::runtime_error);
  ::unsetenv("TWOPHASE_DATA_ROOT");
}

TEST_CASE("email-Eu-core files are treated as undirected") {
  const BatchConfig c = parse("dataset = email-Eu-core-head.txt\nalgorithms = random\nbudgets = 100\n");
  CHECK_FALSE(prepare_instance(c).dataset.graph.directed());
  const BatchConfig w = parse("dataset = wiki-Vote-head.txt\nalgorithms = random\nbudgets = 100\n");
  CHECK(prepare_instance(w).dataset.graph.directed());
}

TEST_CASE("run_batch: cross product in config order, deterministic output") {
  const BatchConfig c = parse(kSmallBatch);
  const auto records = run_batch(c);
  REQUIRE(records.size() == 6);
  CHECK(records[0].algorithm == "single_greedy");
  CHECK(records[0].budget == 200);
  CHECK(records[5].algorithm == "random");
  CHECK(records[5].budget == 400);
  for (const auto& r : records) {
    CHECK(r.profit_difference == doctest::Approx(r.two_phase_profit_max - r.one_phase_profit));
    CHECK(r.total_cardinality == r.s1_size + r.s2_size);
  }
  const std::string first = csv_of(records);
  CHECK(csv_of(run_batch(c)) == first);

  BatchConfig threaded = c;
  threaded.threads = 3;
  CHECK(csv_of(run_batch(threaded)) == first);
  threaded.parallel = true;
  CHECK(csv_of(run_batch(threaded)) == first);
}

TEST_CASE("CSV rows round-trip") {
  const auto records = run_batch(parse(kSmallBatch));
  const std::string text = csv_of(records);
  std::istringstream in(text);
  const auto back = read_csv(in);
  REQUIRE(back.size() == records.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    CHECK(format_csv_row(back[i]) == format_csv_row(records[i]));
    CHECK(back[i].s1_seeds == records[i].s1_seeds);
    CHECK(back[i].budget == records[i].budget);
  }
  CHECK_THROWS_AS(parse_csv_row("a,b,c"), std::invalid_argument);
  std::istringstream bad("not,a,header\n");
  CHECK_THROWS_AS(read_csv(bad), std::invalid_argument);
}

TEST_CASE("format_fixed is locale independent with four decimals") {
  CHECK(format_fixed(1.0) == "1.0000");
  CHECK(format_fixed(-2.5) == "-2.5000");
  CHECK(format_fixed(-0.00001) == "0.0000");
  CHECK(format_fixed(12345.67891) == "12345.6789");
}

TEST_CASE("plot data files") {
  const auto records = run_batch(parse(kSmallBatch));
  const fs::path dir = fs::temp_directory_path() / "twophase-plot-test";
  fs::remove_all(dir);
  write_plot_data(dir, records);
  std::ifstream card(dir / "cardinality.tsv");
  std::ifstream diff(dir / "profit_difference.tsv");
  std::string line;
  std::size_t rows = 0;
  std::getline(card, line);
  CHECK(line == "algorithm\tbudget\tone_phase_cardinality\ttwo_phase_cardinality");
  while (std::getline(card, line)) ++rows;
  CHECK(rows == records.size());
  rows = 0;
  std::getline(diff, line);
  while (std::getline(diff, line)) ++rows;
  CHECK(rows == records.size());
  fs::remove_all(dir);
}
