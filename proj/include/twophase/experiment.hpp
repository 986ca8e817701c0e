#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "twophase/dataset.hpp"
#include "twophase/graph.hpp"
#include "twophase/selection.hpp"

namespace twophase {

// Flat key=value batch description. Lists are comma-separated, '#' starts a
// comment. Keys:
//   dataset        edge-list path, or synthetic:pa:<nodes>:<attach>[:<seed>]
//   name           dataset label for the CSV (default: file stem)
//   graph_type     directed | undirected | auto (default auto)
//   probability    uniform arc probability (default 0.01)
//   algorithms     list of algorithm names
//   budgets        list of total budgets
//   split          phase-I budget fraction (default 0.6)
//   d              observation step (default 3)
//   phase1_observations, phase2_runs, selection_replications,
//   single_phase_replications, common_random_numbers
//   cost_range, benefit_range   lo,hi (defaults 50,100 and 800,1000)
//   master_seed, attribute_seed (default: master_seed)
//   threads        worker count (default 1)
//   parallel       run (algorithm, budget) cells concurrently (default false)
struct BatchConfig {
  std::string dataset;
  std::string name;
  std::string graph_type = "auto";
  double probability = 0.01;
  std::vector<Algorithm> algorithms;
  std::vector<Cost> budgets;
  double split = 0.6;
  std::size_t observation_step = 3;
  std::size_t phase1_observations = 100;
  std::size_t phase2_runs = 100;
  std::size_t selection_replications = 100;
  std::size_t single_phase_replications = 10000;
  bool common_random_numbers = true;
  AttributeSpec attributes;
  std::uint64_t master_seed = 1;
  unsigned threads = 1;
  bool parallel = false;
  // Directory relative dataset paths resolve against when TWOPHASE_DATA_ROOT
  // is unset.
  std::filesystem::path base_dir = ".";

  void validate() const;
};

// Throws std::invalid_argument naming the offending line.
BatchConfig parse_batch_config(std::istream& in, const std::filesystem::path& base_dir = ".");
BatchConfig load_batch_config(const std::filesystem::path& path);

std::filesystem::path resolve_dataset_path(const BatchConfig& config);

struct ExperimentInstance {
  std::string name;
  LoadedDataset dataset;
  NodeEconomics economics;
};

// Loads or generates the graph and draws the node attributes.
ExperimentInstance prepare_instance(const BatchConfig& config);

struct ExperimentRecord {
  std::string dataset;
  std::string algorithm;
  Cost budget = 0;
  double split = 0.0;
  std::size_t d = 0;
  std::size_t s1_size = 0;
  std::size_t s2_size = 0;
  std::size_t total_cardinality = 0;  // |S1| + |S2|
  std::size_t one_phase_cardinality = 0;
  double one_phase_profit = 0.0;
  double two_phase_profit_max = 0.0;
  double two_phase_profit_mean = 0.0;
  double two_phase_profit_stddev = 0.0;
  double profit_difference = 0.0;       // max variant minus one-phase
  double profit_difference_mean = 0.0;  // mean variant minus one-phase
  std::uint64_t master_seed = 0;
  std::vector<NodeId> s1_seeds;
  std::vector<NodeId> s2_seeds;
  std::vector<NodeId> one_phase_seeds;
  double wall_seconds = 0.0;  // not part of the CSV

  friend bool operator==(const ExperimentRecord&, const ExperimentRecord&) = default;
};

ExperimentRecord run_cell(const BatchConfig& config, const ExperimentInstance& instance,
                          Algorithm algorithm, Cost budget, unsigned threads);

// One record per (algorithm, budget) in config order.
std::vector<ExperimentRecord> run_batch(const BatchConfig& config,
                                        const ExperimentInstance& instance);
std::vector<ExperimentRecord> run_batch(const BatchConfig& config);

std::string csv_header();
std::string format_csv_row(const ExperimentRecord& record);
ExperimentRecord parse_csv_row(const std::string& line);
void write_csv(std::ostream& out, const std::vector<ExperimentRecord>& records);
std::vector<ExperimentRecord> read_csv(std::istream& in);

// cardinality.tsv and profit_difference.tsv per (algorithm, budget) plus
// timing.tsv.
void write_plot_data(const std::filesystem::path& dir, const std::vector<ExperimentRecord>& records);
void write_timing(std::ostream& out, const std::vector<ExperimentRecord>& records);

std::string format_fixed(double value, int decimals = 4);

}  // namespace twophase
