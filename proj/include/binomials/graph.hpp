#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "binomials/metrics.hpp"

namespace binomials {

struct NodeInfo {
  std::uint64_t distinct_lists = 0;   // distinct pairs containing the word
  std::uint64_t total_instances = 0;  // instances of those pairs

  bool operator==(const NodeInfo&) const = default;
};

struct EdgeInfo {
  double asymmetry = 0;
  std::uint64_t n_total = 0;
  double ordinality = 0;  // share of instances in edge direction, >= 0.5

  bool operator==(const EdgeInfo&) const = default;
};

using Edge = std::pair<std::string, std::string>;

/// Words with one majority-oriented edge per qualifying pair.
struct BinomialGraph {
  std::map<std::string, NodeInfo> nodes;
  std::map<Edge, EdgeInfo> edges;

  bool operator==(const BinomialGraph&) const = default;
};

using NodePredicate = std::function<bool(std::string_view)>;

/// Edge from the majority-first word to the other for every pair with at least
/// `edge_floor` instances; an exact tie points first -> second with asymmetry 0.
/// Nodes are the words incident to an edge.
BinomialGraph build_graph(const PairTable& pairs, std::uint64_t edge_floor = 30, const NodePredicate& keep = {});

/// Edges with asymmetry >= tau; every node is kept.
BinomialGraph threshold_subgraph(const BinomialGraph& graph, double tau);

/// Kahn's algorithm over the edges with asymmetry >= tau.
bool is_acyclic(const BinomialGraph& graph, double tau = 0.0);

struct CycleOptions {
  std::size_t max_cycles = 10000;
  std::size_t max_length = 12;
};

struct CyclicThreshold {
  std::optional<double> tau;  // empty: acyclic at every threshold
  std::vector<std::vector<std::string>> cycles;  // each starts at its smallest word
  bool truncated = false;  // the cycle cap was reached
};

/// Largest tau whose threshold subgraph has a directed cycle, found by inserting
/// edges in descending asymmetry with a union-find shortcut and a reachability
/// check; plus the simple cycles at tau.
CyclicThreshold min_cyclic_threshold(const BinomialGraph& graph, const CycleOptions& options = {});

/// Reference: checks acyclicity at each distinct edge asymmetry, largest first.
std::optional<double> min_cyclic_threshold_bruteforce(const BinomialGraph& graph);

/// Simple cycles among edges with asymmetry >= tau, rotated to start at their smallest word and sorted.
std::vector<std::vector<std::string>> simple_cycles(const BinomialGraph& graph, double tau,
                                                    const CycleOptions& options, bool* truncated = nullptr);

struct SweepPoint {
  double tau = 0;
  std::size_t edges = 0;
  bool acyclic = true;

  bool operator==(const SweepPoint&) const = default;
};

std::vector<SweepPoint> threshold_sweep_serial(const BinomialGraph& graph, const std::vector<double>& taus);
/// OpenMP over taus; identical output to the serial version.
std::vector<SweepPoint> threshold_sweep(const BinomialGraph& graph, const std::vector<double>& taus);

/// taus 0, 1/(n-1), ..., 1.
std::vector<double> even_taus(std::size_t n);

struct DotStyle {
  std::string graph_name = "binomials";
  /// Ascending upper bounds of the node color buckets over total_instances.
  std::vector<std::uint64_t> instance_buckets = {10, 100, 1000, 10000};
  std::vector<std::string> node_colors = {"#deebf7", "#9ecae1", "#6baed6", "#3182bd", "#08519c"};
  /// Ascending lower bounds of the edge color buckets over asymmetry.
  std::vector<double> asymmetry_buckets = {0.5, 0.8, 0.9, 0.97};
  std::vector<std::string> edge_colors = {"#bdbdbd", "#fdae6b", "#fd8d3c", "#e6550d", "#a63603"};
};

/// Deterministic DOT text: nodes sorted, edges sorted by (from, to).
std::string export_dot(const BinomialGraph& graph, const DotStyle& style = {});

/// JSON with tau*, the cycles, and the metadata of every cycle edge.
std::string cycle_report_json(const BinomialGraph& graph, const CyclicThreshold& result,
                              const std::vector<SweepPoint>& sweep);

}  // namespace binomials
