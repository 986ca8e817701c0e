#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "twophase/dataset.hpp"
#include "twophase/experiment.hpp"
#include "twophase/kernels.hpp"
#include "twophase/profit.hpp"

namespace fs = std::filesystem;
using namespace twophase;

namespace {

int cmd_run(const std::string& config_path, const std::string& out_dir, bool quiet,
            unsigned threads_override) {
  BatchConfig config = load_batch_config(config_path);
  if (threads_override > 0) config.threads = threads_override;
  const ExperimentInstance instance = prepare_instance(config);
  if (instance.dataset.stats.empty) {
    std::cerr << "warning: dataset " << instance.name << " has no edges\n";
  }
  const auto records = run_batch(config, instance);
  if (!quiet) write_csv(std::cout, records);
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    std::ofstream csv(fs::path(out_dir) / "results.csv");
    std::ofstream timing(fs::path(out_dir) / "timing.tsv");
    if (!csv || !timing) throw std::runtime_error("cannot write results in " + out_dir);
    write_csv(csv, records);
    write_timing(timing, records);
    write_plot_data(out_dir, records);
  }
  return 0;
}

int cmd_inspect(const std::string& path, const std::string& type) {
  LoadOptions opts;
  opts.directedness = type == "undirected" ? Directedness::kUndirected : Directedness::kDirected;
  const LoadedDataset ds = load_snap_edge_list(path, opts);
  const DatasetSummary s = summarize_dataset(ds);
  if (ds.stats.empty) std::cerr << "warning: " << path << " has no edges\n";
  std::cout << "file\t" << path << '\n'
            << "type\t" << type << '\n'
            << "nodes\t" << s.nodes << '\n'
            << "edges\t" << s.edges << '\n'
            << "arcs\t" << s.arcs << '\n'
            << "self_loops\t" << ds.stats.self_loops << '\n'
            << "duplicate_lines\t" << ds.stats.duplicate_edges << '\n'
            << "comment_lines\t" << ds.stats.comment_lines << '\n'
            << "max_degree\t" << s.max_degree << '\n'
            << "average_degree\t" << format_fixed(s.average_degree, 2) << '\n'
            << "isa\t" << kernels::isa_name(kernels::active_isa()) << '\n';
  return 0;
}

int cmd_oracle(const std::string& path, const std::string& type, const std::vector<Cost>& costs,
               const std::vector<Benefit>& benefits, const std::vector<NodeId>& seeds,
               std::size_t limit) {
  LoadOptions opts;
  opts.directedness = type == "undirected" ? Directedness::kUndirected : Directedness::kDirected;
  opts.uniform_probability.reset();
  opts.remap_ids = false;
  const LoadedDataset ds = load_snap_edge_list(path, opts);
  const std::size_t n = std::max(costs.size(), static_cast<std::size_t>(ds.graph.node_count()));
  std::vector<Edge> edges;
  for (ArcId a = 0; a < ds.graph.arc_count(); ++a) {
    const NodeId s = ds.graph.arc_source(a);
    const NodeId t = ds.graph.arc_target(a);
    if (ds.graph.directed() || s < t) edges.push_back({s, t, ds.graph.arc_probability(a)});
  }
  const SocialGraph g = build_graph(edges, opts.directedness, n);
  const NodeEconomics econ(costs, benefits);
  econ.check_matches(g);
  const GraphView view(g);
  const NodeUniverse all = NodeUniverse::all(g.node_count());
  std::cout << "influence\t" << format_fixed(exact_influence(view, seeds, limit)) << '\n'
            << "benefit\t" << format_fixed(exact_benefit(view, econ, seeds, all, limit)) << '\n'
            << "cost\t" << seed_cost(econ, seeds) << '\n'
            << "profit\t" << format_fixed(exact_profit(view, econ, seeds, all, limit)) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-phase profit maximization under the Independent Cascade model"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  bool quiet = false;
  unsigned threads = 0;
  auto* run = app.add_subcommand("run", "Run an experiment batch from a key=value config");
  run->add_option("config", config_path, "Config file")->required()->check(CLI::ExistingFile);
  run->add_option("-o,--output", out_dir, "Directory for results.csv, plot data and timing");
  run->add_option("-j,--threads", threads, "Override worker count");
  run->add_flag("-q,--quiet", quiet, "Do not print the CSV to stdout");

  std::string dataset, type = "directed";
  auto* inspect = app.add_subcommand("inspect", "Print statistics of an edge-list file");
  inspect->add_option("dataset", dataset, "Edge-list file")->required();
  inspect->add_option("-t,--type", type, "directed or undirected")
      ->check(CLI::IsMember({"directed", "undirected"}));

  std::string edge_file, oracle_type = "directed";
  std::vector<Cost> costs;
  std::vector<Benefit> benefits;
  std::vector<NodeId> seeds;
  std::size_t limit = kDefaultEnumerationLimit;
  auto* oracle = app.add_subcommand("oracle", "Exact influence, benefit and profit on a tiny graph");
  oracle->add_option("edges", edge_file, "Lines 'src dst probability' with ids 0..n-1")->required();
  oracle->add_option("--costs", costs, "Per-node costs")->required()->delimiter(',');
  oracle->add_option("--benefits", benefits, "Per-node benefits")->required()->delimiter(',');
  oracle->add_option("--seeds", seeds, "Seed node ids")->delimiter(',');
  oracle->add_option("-t,--type", oracle_type, "directed or undirected")
      ->check(CLI::IsMember({"directed", "undirected"}));
  oracle->add_option("--limit", limit, "Maximum arc count to enumerate");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(config_path, out_dir, quiet, threads);
    if (*inspect) {
      if (const char* root = std::getenv("TWOPHASE_DATA_ROOT");
          root != nullptr && *root != '\0' && fs::path(dataset).is_relative() && !fs::exists(dataset)) {
        dataset = (fs::path(root) / dataset).string();
      }
      return cmd_inspect(dataset, type);
    }
    if (*oracle) return cmd_oracle(edge_file, oracle_type, costs, benefits, seeds, limit);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
