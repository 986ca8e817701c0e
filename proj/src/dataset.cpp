#include "twophase/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <random>
#include <unordered_set>

#include "twophase/random.hpp"

namespace twophase {

ParseError::ParseError(const std::string& where, std::size_t line, const std::string& what)
    : std::runtime_error(where + ":" + std::to_string(line) + ": " + what), line_(line) {}

namespace {

bool is_separator(char c) { return c == ' ' || c == '\t' || c == ',' || c == '\r'; }

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_separator(line[i])) ++i;
    const std::size_t start = i;
    while (i < line.size() && !is_separator(line[i])) ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

template <typename T>
bool parse_number(std::string_view text, T& value) {
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  return ec == std::errc() && ptr == text.data() + text.size();
}

struct RawEdge {
  std::uint64_t source;
  std::uint64_t target;
  double probability;
};

}  // namespace

LoadedDataset parse_edge_list(std::istream& in, const LoadOptions& options,
                              const std::string& source_name) {
  LoadedDataset out;
  std::vector<RawEdge> raw;
  std::string line;
  while (std::getline(in, line)) {
    ++out.stats.lines;
    const std::string_view view(line);
    const std::size_t first = view.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) continue;
    if (view[first] == '#' || view[first] == '%') {
      ++out.stats.comment_lines;
      continue;
    }
    const auto fields = split_fields(view);
    RawEdge e{};
    if (fields.size() < 2 || !parse_number(fields[0], e.source) ||
        !parse_number(fields[1], e.target)) {
      throw ParseError(source_name, out.stats.lines,
                       "expected two non-negative integer node ids, got '" + line + "'");
    }
    if (options.uniform_probability) {
      e.probability = *options.uniform_probability;
    } else if (fields.size() < 3 || !parse_number(fields[2], e.probability)) {
      throw ParseError(source_name, out.stats.lines, "missing or malformed probability column");
    }
    if (!(e.probability > 0.0 && e.probability <= 1.0)) {
      throw ParseError(source_name, out.stats.lines, "probability must lie in (0,1]");
    }
    raw.push_back(e);
  }
  out.stats.edge_lines = raw.size();
  out.stats.empty = raw.empty();

  if (options.remap_ids) {
    for (const RawEdge& e : raw) {
      out.original_ids.push_back(e.source);
      out.original_ids.push_back(e.target);
    }
    std::sort(out.original_ids.begin(), out.original_ids.end());
    out.original_ids.erase(std::unique(out.original_ids.begin(), out.original_ids.end()),
                           out.original_ids.end());
  }
  auto dense = [&](std::uint64_t id) -> NodeId {
    if (!options.remap_ids) {
      if (id > 0xFFFFFFFEull) throw std::out_of_range("node id too large: " + std::to_string(id));
      return static_cast<NodeId>(id);
    }
    return static_cast<NodeId>(
        std::lower_bound(out.original_ids.begin(), out.original_ids.end(), id) -
        out.original_ids.begin());
  };

  const bool undirected = options.directedness == Directedness::kUndirected;
  std::unordered_set<NodeId> loops;
  std::vector<Edge> edges;
  edges.reserve(raw.size());
  std::size_t node_count = out.original_ids.size();
  for (const RawEdge& e : raw) {
    const NodeId s = dense(e.source);
    const NodeId t = dense(e.target);
    node_count = std::max<std::size_t>(node_count, std::max(s, t) + std::size_t{1});
    if (s == t) {
      if (!loops.insert(s).second) ++out.stats.duplicate_edges;
      continue;
    }
    edges.push_back({s, t, e.probability});
  }
  BuildStats build;
  out.graph = build_graph(edges, options.directedness, node_count, &build);
  out.stats.self_loops = loops.size();
  out.stats.duplicate_edges += build.duplicate_edges;
  out.stats.unique_edges =
      (undirected ? out.graph.arc_count() / 2 : out.graph.arc_count()) + loops.size();
  if (!options.remap_ids) {
    out.original_ids.resize(out.graph.node_count());
    for (std::size_t i = 0; i < out.original_ids.size(); ++i) out.original_ids[i] = i;
  }
  return out;
}

LoadedDataset load_snap_edge_list(const std::filesystem::path& path, const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset file " + path.string());
  return parse_edge_list(in, options, path.string());
}

DatasetSummary summarize_dataset(const LoadedDataset& dataset) {
  const SocialGraph& g = dataset.graph;
  DatasetSummary s;
  s.nodes = g.node_count();
  s.edges = dataset.stats.unique_edges;
  s.arcs = g.arc_count();
  for (NodeId u = 0; u < g.node_count(); ++u) {
    const std::size_t d = g.directed() ? g.out_degree(u) + g.in_neighbors(u).size() : g.out_degree(u);
    s.max_degree = std::max(s.max_degree, d);
  }
  s.average_degree = s.nodes == 0 ? 0.0 : 2.0 * static_cast<double>(s.edges) / static_cast<double>(s.nodes);
  return s;
}

void AttributeSpec::validate() const {
  if (cost_lo < 1 || cost_hi < cost_lo) {
    throw std::invalid_argument("cost range must satisfy 1 <= lo <= hi");
  }
  if (benefit_lo < 1 || benefit_hi < benefit_lo) {
    throw std::invalid_argument("benefit range must satisfy 1 <= lo <= hi");
  }
}

NodeEconomics generate_attributes(const SocialGraph& graph, const AttributeSpec& spec) {
  spec.validate();
  const RandomSource root = RandomSource(spec.seed).derive("attributes");
  auto cost_engine = root.derive("cost").engine();
  auto benefit_engine = root.derive("benefit").engine();
  std::uniform_int_distribution<Cost> cost(spec.cost_lo, spec.cost_hi);
  std::uniform_int_distribution<Benefit> benefit(spec.benefit_lo, spec.benefit_hi);
  std::vector<Cost> costs(graph.node_count());
  std::vector<Benefit> benefits(graph.node_count());
  for (auto& c : costs) c = cost(cost_engine);
  for (auto& b : benefits) b = benefit(benefit_engine);
  return NodeEconomics(std::move(costs), std::move(benefits));
}

std::vector<Edge> preferential_attachment_edges(std::size_t nodes, std::size_t attach,
                                                double probability, std::uint64_t seed) {
  if (attach < 1) throw std::invalid_argument("attachment count must be >= 1");
  std::vector<Edge> edges;
  const std::size_t core = std::min(nodes, attach + 1);
  std::vector<NodeId> endpoints;  // each node once per incident edge
  for (NodeId a = 0; a < core; ++a) {
    for (NodeId b = a + 1; b < core; ++b) {
      edges.push_back({a, b, probability});
      endpoints.push_back(a);
      endpoints.push_back(b);
    }
  }
  auto engine = RandomSource(seed).derive("preferential-attachment").engine();
  std::vector<NodeId> chosen;
  for (std::size_t v = core; v < nodes; ++v) {
    chosen.clear();
    std::uniform_int_distribution<std::size_t> pick(0, endpoints.size() - 1);
    while (chosen.size() < attach) {
      const NodeId t = endpoints[pick(engine)];
      if (std::find(chosen.begin(), chosen.end(), t) == chosen.end()) chosen.push_back(t);
    }
    for (NodeId t : chosen) {
      edges.push_back({static_cast<NodeId>(v), t, probability});
      endpoints.push_back(static_cast<NodeId>(v));
      endpoints.push_back(t);
    }
  }
  return edges;
}

}  // namespace twophase
