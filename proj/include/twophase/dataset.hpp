#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "twophase/graph.hpp"

namespace twophase {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& where, std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct LoadOptions {
  Directedness directedness = Directedness::kDirected;
  // Every edge gets this probability; when empty the third column of each
  // line is read as the probability.
  std::optional<double> uniform_probability = 0.01;
  // Map original ids to dense 0..n-1 in ascending original order.
  bool remap_ids = true;
};

struct LoadStats {
  std::size_t lines = 0;
  std::size_t comment_lines = 0;
  std::size_t edge_lines = 0;
  // Distinct edges in the file (pairs unordered when undirected), self-loops
  // included. This is the figure SNAP dataset tables report.
  std::size_t unique_edges = 0;
  std::size_t self_loops = 0;       // distinct self-loops, dropped from the graph
  std::size_t duplicate_edges = 0;  // repeated lines, first occurrence kept
  bool empty = false;
};

struct LoadedDataset {
  SocialGraph graph;
  std::vector<std::uint64_t> original_ids;  // dense id -> id in the file
  LoadStats stats;
};

// Reads a whitespace- or comma-separated edge list ('#' and '%' lines are
// comments, extra columns ignored). Throws std::runtime_error if the file
// cannot be opened and ParseError (with line number) on malformed lines.
LoadedDataset load_snap_edge_list(const std::filesystem::path& path, const LoadOptions& options);
LoadedDataset parse_edge_list(std::istream& in, const LoadOptions& options,
                              const std::string& source_name = "<stream>");

struct DatasetSummary {
  std::size_t nodes = 0;
  std::size_t edges = 0;
  std::size_t arcs = 0;
  std::size_t max_degree = 0;
  double average_degree = 0.0;  // 2 * edges / nodes
};

DatasetSummary summarize_dataset(const LoadedDataset& dataset);

struct AttributeSpec {
  Cost cost_lo = 50;
  Cost cost_hi = 100;
  Benefit benefit_lo = 800;
  Benefit benefit_hi = 1000;
  std::uint64_t seed = 1;

  void validate() const;
};

// Independent uniform integer cost and benefit per node.
NodeEconomics generate_attributes(const SocialGraph& graph, const AttributeSpec& spec);

// Undirected preferential-attachment edges: a clique on attach + 1 nodes,
// then every new node links to `attach` distinct nodes chosen with
// probability proportional to degree.
std::vector<Edge> preferential_attachment_edges(std::size_t nodes, std::size_t attach,
                                                double probability, std::uint64_t seed);

}  // namespace twophase
