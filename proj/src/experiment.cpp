#include "twophase/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "twophase/orchestrator.hpp"
#include "twophase/parallel.hpp"
#include "twophase/random.hpp"

namespace twophase {

namespace {

std::string_view trim(std::string_view s) {
  const std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos
                                                                  : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

template <typename T>
T parse_value(std::string_view text, std::string_view what) {
  text = trim(text);
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw std::invalid_argument("invalid " + std::string(what) + ": '" + std::string(text) + "'");
  }
  return value;
}

bool parse_bool(std::string_view text, std::string_view what) {
  text = trim(text);
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw std::invalid_argument("invalid " + std::string(what) + ": '" + std::string(text) + "'");
}

template <typename T>
std::pair<T, T> parse_range(std::string_view text, std::string_view what) {
  const auto parts = split(text, ',');
  if (parts.size() != 2) throw std::invalid_argument(std::string(what) + " needs lo,hi");
  return {parse_value<T>(parts[0], what), parse_value<T>(parts[1], what)};
}

std::string join_ids(const std::vector<NodeId>& ids) {
  std::string s;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) s += ';';
    s += std::to_string(ids[i]);
  }
  return s;
}

std::vector<NodeId> parse_ids(std::string_view text) {
  std::vector<NodeId> ids;
  if (text.empty()) return ids;
  for (std::string_view part : split(text, ';')) ids.push_back(parse_value<NodeId>(part, "seed id"));
  return ids;
}

struct SyntheticSpec {
  std::size_t nodes = 0;
  std::size_t attach = 0;
  std::uint64_t seed = 1;
};

std::optional<SyntheticSpec> parse_synthetic(std::string_view dataset) {
  constexpr std::string_view prefix = "synthetic:pa:";
  if (dataset.substr(0, prefix.size()) != prefix) return std::nullopt;
  const auto parts = split(dataset.substr(prefix.size()), ':');
  if (parts.size() < 2 || parts.size() > 3) {
    throw std::invalid_argument("synthetic dataset must be synthetic:pa:<nodes>:<attach>[:<seed>]");
  }
  SyntheticSpec s;
  s.nodes = parse_value<std::size_t>(parts[0], "synthetic node count");
  s.attach = parse_value<std::size_t>(parts[1], "synthetic attachment count");
  if (parts.size() == 3) s.seed = parse_value<std::uint64_t>(parts[2], "synthetic seed");
  return s;
}

constexpr std::size_t kCsvColumns = 19;

}  // namespace

std::string format_fixed(double value, int decimals) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, decimals);
  if (ec != std::errc()) throw std::runtime_error("number formatting failed");
  std::string s(buf, ptr);
  // Avoid "-0.0000".
  if (s.find_first_not_of("-0.") == std::string::npos && s.front() == '-') s.erase(0, 1);
  return s;
}

void BatchConfig::validate() const {
  if (dataset.empty()) throw std::invalid_argument("config: dataset is required");
  if (algorithms.empty()) throw std::invalid_argument("config: algorithms list is empty");
  if (budgets.empty()) throw std::invalid_argument("config: budgets list is empty");
  for (Cost b : budgets) {
    if (b < 0) throw std::invalid_argument("config: budgets must be non-negative");
  }
  if (graph_type != "auto" && graph_type != "directed" && graph_type != "undirected") {
    throw std::invalid_argument("config: graph_type must be directed, undirected or auto");
  }
  if (!(probability > 0.0 && probability <= 1.0)) {
    throw std::invalid_argument("config: probability must lie in (0,1]");
  }
  if (name.find_first_of(",\"\n\r") != std::string::npos) {
    throw std::invalid_argument("config: dataset name may not contain commas, quotes or newlines");
  }
  attributes.validate();
  if (threads < 1) throw std::invalid_argument("config: threads must be >= 1");
  PhaseConfig pc;
  pc.split_fraction = split;
  pc.observation_step = observation_step;
  pc.phase1_observations = phase1_observations;
  pc.phase2_runs_per_observation = phase2_runs;
  pc.selection_replications = selection_replications;
  pc.single_phase_replications = single_phase_replications;
  pc.validate();
}

BatchConfig parse_batch_config(std::istream& in, const std::filesystem::path& base_dir) {
  BatchConfig cfg;
  cfg.base_dir = base_dir;
  std::optional<std::uint64_t> attribute_seed;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string_view text(line);
    if (const std::size_t hash = text.find('#'); hash != std::string_view::npos) {
      text = text.substr(0, hash);
    }
    text = trim(text);
    if (text.empty()) continue;
    const std::size_t eq = text.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("config line " + std::to_string(number) + ": expected key=value");
    }
    const std::string key(trim(text.substr(0, eq)));
    const std::string_view value = trim(text.substr(eq + 1));
    try {
      if (key == "dataset") {
        cfg.dataset = value;
      } else if (key == "name") {
        cfg.name = value;
      } else if (key == "graph_type") {
        cfg.graph_type = value;
      } else if (key == "probability") {
        cfg.probability = parse_value<double>(value, key);
      } else if (key == "algorithms") {
        cfg.algorithms.clear();
        for (std::string_view part : split(value, ',')) {
          const auto algo = parse_algorithm(trim(part));
          if (!algo) throw std::invalid_argument("unknown algorithm '" + std::string(trim(part)) + "'");
          cfg.algorithms.push_back(*algo);
        }
      } else if (key == "budgets") {
        cfg.budgets.clear();
        for (std::string_view part : split(value, ',')) cfg.budgets.push_back(parse_value<Cost>(part, key));
      } else if (key == "split") {
        cfg.split = parse_value<double>(value, key);
      } else if (key == "d") {
        cfg.observation_step = parse_value<std::size_t>(value, key);
      } else if (key == "phase1_observations") {
        cfg.phase1_observations = parse_value<std::size_t>(value, key);
      } else if (key == "phase2_runs") {
        cfg.phase2_runs = parse_value<std::size_t>(value, key);
      } else if (key == "selection_replications") {
        cfg.selection_replications = parse_value<std::size_t>(value, key);
      } else if (key == "single_phase_replications") {
        cfg.single_phase_replications = parse_value<std::size_t>(value, key);
      } else if (key == "common_random_numbers") {
        cfg.common_random_numbers = parse_bool(value, key);
      } else if (key == "cost_range") {
        std::tie(cfg.attributes.cost_lo, cfg.attributes.cost_hi) = parse_range<Cost>(value, key);
      } else if (key == "benefit_range") {
        std::tie(cfg.attributes.benefit_lo, cfg.attributes.benefit_hi) =
            parse_range<Benefit>(value, key);
      } else if (key == "master_seed") {
        cfg.master_seed = parse_value<std::uint64_t>(value, key);
      } else if (key == "attribute_seed") {
        attribute_seed = parse_value<std::uint64_t>(value, key);
      } else if (key == "threads") {
        cfg.threads = parse_value<unsigned>(value, key);
      } else if (key == "parallel") {
        cfg.parallel = parse_bool(value, key);
      } else {
        throw std::invalid_argument("unknown key '" + key + "'");
      }
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("config line " + std::to_string(number) + ": " + e.what());
    }
  }
  cfg.attributes.seed = attribute_seed.value_or(cfg.master_seed);
  if (cfg.name.empty() && !cfg.dataset.empty()) {
    cfg.name = parse_synthetic(cfg.dataset) ? cfg.dataset
                                            : std::filesystem::path(cfg.dataset).stem().string();
    std::replace(cfg.name.begin(), cfg.name.end(), ',', '_');
  }
  cfg.validate();
  return cfg;
}

BatchConfig load_batch_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path.string());
  return parse_batch_config(in, path.parent_path().empty() ? "." : path.parent_path());
}

std::filesystem::path resolve_dataset_path(const BatchConfig& config) {
  const std::filesystem::path p(config.dataset);
  if (p.is_absolute()) return p;
  if (const char* root = std::getenv("TWOPHASE_DATA_ROOT"); root != nullptr && *root != '\0') {
    return std::filesystem::path(root) / p;
  }
  return config.base_dir / p;
}

ExperimentInstance prepare_instance(const BatchConfig& config) {
  config.validate();
  ExperimentInstance inst;
  inst.name = config.name;
  if (const auto synth = parse_synthetic(config.dataset)) {
    const Directedness dir =
        config.graph_type == "directed" ? Directedness::kDirected : Directedness::kUndirected;
    const auto edges =
        preferential_attachment_edges(synth->nodes, synth->attach, config.probability, synth->seed);
    BuildStats build;
    inst.dataset.graph = build_graph(edges, dir, synth->nodes, &build);
    inst.dataset.stats.edge_lines = edges.size();
    inst.dataset.stats.unique_edges = edges.size() - build.duplicate_edges;
    inst.dataset.original_ids.resize(synth->nodes);
    for (std::size_t i = 0; i < synth->nodes; ++i) inst.dataset.original_ids[i] = i;
  } else {
    const std::filesystem::path path = resolve_dataset_path(config);
    if (!std::filesystem::exists(path)) {
      throw std::runtime_error("dataset file not found: " + path.string());
    }
    LoadOptions opts;
    opts.uniform_probability = config.probability;
    if (config.graph_type == "undirected") {
      opts.directedness = Directedness::kUndirected;
    } else if (config.graph_type == "auto") {
      // email-Eu-core is undirected in the reference table, the others directed.
      opts.directedness = path.filename().string().find("email-Eu-core") != std::string::npos
                              ? Directedness::kUndirected
                              : Directedness::kDirected;
    }
    inst.dataset = load_snap_edge_list(path, opts);
  }
  inst.economics = generate_attributes(inst.dataset.graph, config.attributes);
  return inst;
}

ExperimentRecord run_cell(const BatchConfig& config, const ExperimentInstance& instance,
                          Algorithm algorithm, Cost budget, unsigned threads) {
  const auto start = std::chrono::steady_clock::now();
  PhaseConfig pc;
  pc.total_budget = budget;
  pc.split_fraction = config.split;
  pc.observation_step = config.observation_step;
  pc.phase1_observations = config.phase1_observations;
  pc.phase2_runs_per_observation = config.phase2_runs;
  pc.selection_replications = config.selection_replications;
  pc.single_phase_replications = config.single_phase_replications;
  pc.common_random_numbers = config.common_random_numbers;
  pc.algorithm = algorithm;
  pc.threads = threads;
  // Each cell owns a stream keyed by (algorithm, budget) only.
  pc.master_seed = RandomSource(config.master_seed)
                       .derive(algorithm_name(algorithm), static_cast<std::uint64_t>(budget))
                       .key();

  const TwoPhaseResult res = run_two_phase(pc, instance.dataset.graph, instance.economics);
  ExperimentRecord r;
  r.dataset = instance.name;
  r.algorithm = std::string(algorithm_name(algorithm));
  r.budget = budget;
  r.split = config.split;
  r.d = config.observation_step;
  r.s1_seeds = res.phase1.sorted_seeds();
  r.s2_seeds = res.observations[res.best_observation].selection.sorted_seeds();
  r.one_phase_seeds = res.single_phase.selection.sorted_seeds();
  r.s1_size = r.s1_seeds.size();
  r.s2_size = r.s2_seeds.size();
  r.total_cardinality = res.total_cardinality;
  r.one_phase_cardinality = r.one_phase_seeds.size();
  r.one_phase_profit = res.single_phase.profit.mean;
  r.two_phase_profit_max = res.max_profit;
  r.two_phase_profit_mean = res.mean_profit;
  r.two_phase_profit_stddev = res.profit_stddev;
  r.profit_difference = r.two_phase_profit_max - r.one_phase_profit;
  r.profit_difference_mean = r.two_phase_profit_mean - r.one_phase_profit;
  r.master_seed = config.master_seed;
  r.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<ExperimentRecord> run_batch(const BatchConfig& config,
                                        const ExperimentInstance& instance) {
  config.validate();
  struct Cell {
    Algorithm algorithm;
    Cost budget;
  };
  std::vector<Cell> cells;
  for (Algorithm a : config.algorithms) {
    for (Cost b : config.budgets) cells.push_back({a, b});
  }
  std::vector<ExperimentRecord> records(cells.size());
  const unsigned outer = config.parallel ? config.threads : 1;
  const unsigned inner = config.parallel ? 1 : config.threads;
  parallel_for(cells.size(), outer, [&](std::size_t begin, std::size_t end, unsigned) {
    for (std::size_t i = begin; i < end; ++i) {
      records[i] = run_cell(config, instance, cells[i].algorithm, cells[i].budget, inner);
    }
  });
  return records;
}

std::vector<ExperimentRecord> run_batch(const BatchConfig& config) {
  const ExperimentInstance instance = prepare_instance(config);
  return run_batch(config, instance);
}

std::string csv_header() {
  return "dataset,algorithm,budget,split,d,s1_size,s2_size,total_cardinality,"
         "one_phase_cardinality,one_phase_profit,two_phase_profit_max,two_phase_profit_mean,"
         "two_phase_profit_stddev,profit_difference,profit_difference_mean,master_seed,"
         "s1_seeds,s2_seeds,one_phase_seeds";
}

std::string format_csv_row(const ExperimentRecord& r) {
  std::ostringstream os;
  os << r.dataset << ',' << r.algorithm << ',' << r.budget << ',' << format_fixed(r.split) << ','
     << r.d << ',' << r.s1_size << ',' << r.s2_size << ',' << r.total_cardinality << ','
     << r.one_phase_cardinality << ',' << format_fixed(r.one_phase_profit) << ','
     << format_fixed(r.two_phase_profit_max) << ',' << format_fixed(r.two_phase_profit_mean) << ','
     << format_fixed(r.two_phase_profit_stddev) << ',' << format_fixed(r.profit_difference) << ','
     << format_fixed(r.profit_difference_mean) << ',' << r.master_seed << ','
     << join_ids(r.s1_seeds) << ',' << join_ids(r.s2_seeds) << ',' << join_ids(r.one_phase_seeds);
  return os.str();
}

ExperimentRecord parse_csv_row(const std::string& line) {
  std::string_view text(line);
  if (!text.empty() && text.back() == '\r') text.remove_suffix(1);
  const auto f = split(text, ',');
  if (f.size() != kCsvColumns) {
    throw std::invalid_argument("CSV row has " + std::to_string(f.size()) + " fields, expected " +
                                std::to_string(kCsvColumns));
  }
  ExperimentRecord r;
  r.dataset = f[0];
  r.algorithm = f[1];
  if (!parse_algorithm(r.algorithm)) {
    throw std::invalid_argument("CSV row: unknown algorithm '" + r.algorithm + "'");
  }
  r.budget = parse_value<Cost>(f[2], "budget");
  r.split = parse_value<double>(f[3], "split");
  r.d = parse_value<std::size_t>(f[4], "d");
  r.s1_size = parse_value<std::size_t>(f[5], "s1_size");
  r.s2_size = parse_value<std::size_t>(f[6], "s2_size");
  r.total_cardinality = parse_value<std::size_t>(f[7], "total_cardinality");
  r.one_phase_cardinality = parse_value<std::size_t>(f[8], "one_phase_cardinality");
  r.one_phase_profit = parse_value<double>(f[9], "one_phase_profit");
  r.two_phase_profit_max = parse_value<double>(f[10], "two_phase_profit_max");
  r.two_phase_profit_mean = parse_value<double>(f[11], "two_phase_profit_mean");
  r.two_phase_profit_stddev = parse_value<double>(f[12], "two_phase_profit_stddev");
  r.profit_difference = parse_value<double>(f[13], "profit_difference");
  r.profit_difference_mean = parse_value<double>(f[14], "profit_difference_mean");
  r.master_seed = parse_value<std::uint64_t>(f[15], "master_seed");
  r.s1_seeds = parse_ids(f[16]);
  r.s2_seeds = parse_ids(f[17]);
  r.one_phase_seeds = parse_ids(f[18]);
  if (r.s1_seeds.size() != r.s1_size || r.s2_seeds.size() != r.s2_size ||
      r.one_phase_seeds.size() != r.one_phase_cardinality ||
      r.total_cardinality != r.s1_size + r.s2_size) {
    throw std::invalid_argument("CSV row: cardinalities disagree with seed lists");
  }
  return r;
}

void write_csv(std::ostream& out, const std::vector<ExperimentRecord>& records) {
  out << csv_header() << '\n';
  for (const auto& r : records) out << format_csv_row(r) << '\n';
}

std::vector<ExperimentRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("CSV: missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != csv_header()) throw std::invalid_argument("CSV: unexpected header");
  std::vector<ExperimentRecord> records;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    records.push_back(parse_csv_row(line));
  }
  return records;
}

void write_plot_data(const std::filesystem::path& dir, const std::vector<ExperimentRecord>& records) {
  std::filesystem::create_directories(dir);
  std::ofstream card(dir / "cardinality.tsv");
  std::ofstream diff(dir / "profit_difference.tsv");
  if (!card || !diff) throw std::runtime_error("cannot write plot data in " + dir.string());
  card << "algorithm\tbudget\tone_phase_cardinality\ttwo_phase_cardinality\n";
  diff << "algorithm\tbudget\tone_phase_profit\ttwo_phase_profit_max\tprofit_difference"
          "\ttwo_phase_profit_mean\tprofit_difference_mean\n";
  for (const auto& r : records) {
    card << r.algorithm << '\t' << r.budget << '\t' << r.one_phase_cardinality << '\t'
         << r.total_cardinality << '\n';
    diff << r.algorithm << '\t' << r.budget << '\t' << format_fixed(r.one_phase_profit) << '\t'
         << format_fixed(r.two_phase_profit_max) << '\t' << format_fixed(r.profit_difference)
         << '\t' << format_fixed(r.two_phase_profit_mean) << '\t'
         << format_fixed(r.profit_difference_mean) << '\n';
  }
}

void write_timing(std::ostream& out, const std::vector<ExperimentRecord>& records) {
  out << "algorithm\tbudget\twall_seconds\n";
  for (const auto& r : records) {
    out << r.algorithm << '\t' << r.budget << '\t' << format_fixed(r.wall_seconds, 3) << '\n';
  }
}

}  // namespace twophase
