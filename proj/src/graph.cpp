#include "binomials/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include <json.hpp>

#include "binomials/errors.hpp"
#include "binomials/text_io.hpp"

namespace binomials {

namespace {

struct IndexedEdge {
  std::size_t from;
  std::size_t to;
  double asymmetry;
};

// Dense node indices in lexicographic order.
struct Indexed {
  std::vector<std::string> names;
  std::vector<IndexedEdge> edges;  // in (from, to) order
};

Indexed index_graph(const BinomialGraph& g) {
  Indexed ix;
  std::map<std::string_view, std::size_t> id;
  for (const auto& [name, info] : g.nodes) {
    id.emplace(name, ix.names.size());
    ix.names.push_back(name);
  }
  for (const auto& [e, info] : g.edges) {
    auto a = id.find(e.first);
    auto b = id.find(e.second);
    if (a == id.end() || b == id.end()) throw ArgumentError("edge endpoint missing from node set");
    ix.edges.push_back(IndexedEdge{a->second, b->second, info.asymmetry});
  }
  return ix;
}

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

bool kahn_acyclic(std::size_t n, const std::vector<IndexedEdge>& edges, double tau) {
  std::vector<std::vector<std::size_t>> adj(n);
  std::vector<std::size_t> indeg(n, 0);
  std::size_t m = 0;
  for (const auto& e : edges) {
    if (e.asymmetry < tau) continue;
    adj[e.from].push_back(e.to);
    ++indeg[e.to];
    ++m;
  }
  std::vector<std::size_t> queue;
  for (std::size_t v = 0; v < n; ++v) {
    if (indeg[v] == 0) queue.push_back(v);
  }
  std::size_t removed = 0;
  while (!queue.empty()) {
    const auto v = queue.back();
    queue.pop_back();
    for (const auto w : adj[v]) {
      ++removed;
      if (--indeg[w] == 0) queue.push_back(w);
    }
  }
  return removed == m;
}

}  // namespace

BinomialGraph build_graph(const PairTable& pairs, std::uint64_t edge_floor, const NodePredicate& keep) {
  BinomialGraph g;
  std::map<std::string, NodeInfo> info;
  for (const auto& [key, stats] : pairs) {
    if (keep && (!keep(key.first) || !keep(key.second))) continue;
    const auto t = stats.totals();
    if (t.total() == 0) continue;
    for (const auto* w : {&key.first, &key.second}) {
      auto& ni = info[*w];
      ni.distinct_lists += 1;
      ni.total_instances += t.total();
    }
    if (t.total() < edge_floor) continue;
    const double o = ordinality(t);
    EdgeInfo e;
    e.n_total = t.total();
    if (t.forward >= t.backward) {
      e.ordinality = o;
      e.asymmetry = t.forward == t.backward ? 0.0 : asymmetry(o);
      g.edges.emplace(Edge{key.first, key.second}, e);
    } else {
      e.ordinality = 1.0 - o;
      e.asymmetry = asymmetry(o);
      g.edges.emplace(Edge{key.second, key.first}, e);
    }
  }
  for (const auto& [edge, e] : g.edges) {
    g.nodes[edge.first] = info[edge.first];
    g.nodes[edge.second] = info[edge.second];
  }
  return g;
}

BinomialGraph threshold_subgraph(const BinomialGraph& graph, double tau) {
  BinomialGraph g;
  g.nodes = graph.nodes;
  for (const auto& [edge, e] : graph.edges) {
    if (e.asymmetry >= tau) g.edges.emplace(edge, e);
  }
  return g;
}

bool is_acyclic(const BinomialGraph& graph, double tau) {
  const auto ix = index_graph(graph);
  return kahn_acyclic(ix.names.size(), ix.edges, tau);
}

std::optional<double> min_cyclic_threshold_bruteforce(const BinomialGraph& graph) {
  const auto ix = index_graph(graph);
  std::set<double, std::greater<>> values;
  for (const auto& e : ix.edges) values.insert(e.asymmetry);
  for (const double tau : values) {
    if (!kahn_acyclic(ix.names.size(), ix.edges, tau)) return tau;
  }
  return std::nullopt;
}

std::vector<std::vector<std::string>> simple_cycles(const BinomialGraph& graph, double tau,
                                                    const CycleOptions& options, bool* truncated) {
  const auto ix = index_graph(graph);
  const std::size_t n = ix.names.size();
  std::vector<std::vector<std::size_t>> adj(n);
  for (const auto& e : ix.edges) {
    if (e.asymmetry >= tau) adj[e.from].push_back(e.to);
  }
  std::vector<std::vector<std::string>> cycles;
  std::vector<std::size_t> path;
  std::vector<char> on_path(n, 0);
  bool full = false;
  // Each cycle is found once, from its smallest node, visiting only larger nodes.
  for (std::size_t s = 0; s < n && !full; ++s) {
    std::function<void(std::size_t)> dfs = [&](std::size_t v) {
      for (const auto w : adj[v]) {
        if (full) return;
        if (w == s) {
          if (cycles.size() >= options.max_cycles) {
            full = true;
            return;
          }
          std::vector<std::string> c;
          for (const auto p : path) c.push_back(ix.names[p]);
          cycles.push_back(std::move(c));
        } else if (w > s && !on_path[w] && path.size() < options.max_length) {
          on_path[w] = 1;
          path.push_back(w);
          dfs(w);
          path.pop_back();
          on_path[w] = 0;
        }
      }
    };
    path.assign(1, s);
    on_path[s] = 1;
    dfs(s);
    on_path[s] = 0;
  }
  std::sort(cycles.begin(), cycles.end());
  if (truncated != nullptr) *truncated = full;
  return cycles;
}

CyclicThreshold min_cyclic_threshold(const BinomialGraph& graph, const CycleOptions& options) {
  const auto ix = index_graph(graph);
  const std::size_t n = ix.names.size();
  auto order = ix.edges;
  std::stable_sort(order.begin(), order.end(),
                   [](const IndexedEdge& a, const IndexedEdge& b) { return a.asymmetry > b.asymmetry; });
  DisjointSets sets(n);
  std::vector<std::vector<std::size_t>> adj(n);
  std::vector<std::size_t> stamp(n, 0);
  std::size_t epoch = 0;
  std::vector<std::size_t> stack;
  const auto reaches = [&](std::size_t from, std::size_t target) {
    ++epoch;
    stack.assign(1, from);
    stamp[from] = epoch;
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      if (v == target) return true;
      for (const auto w : adj[v]) {
        if (stamp[w] != epoch) {
          stamp[w] = epoch;
          stack.push_back(w);
        }
      }
    }
    return false;
  };
  CyclicThreshold result;
  for (const auto& e : order) {
    // an edge joining two weak components cannot close a directed cycle
    if (!sets.unite(e.from, e.to) && reaches(e.to, e.from)) {
      result.tau = e.asymmetry;
      break;
    }
    adj[e.from].push_back(e.to);
  }
  if (result.tau) result.cycles = simple_cycles(graph, *result.tau, options, &result.truncated);
  return result;
}

std::vector<SweepPoint> threshold_sweep_serial(const BinomialGraph& graph, const std::vector<double>& taus) {
  const auto ix = index_graph(graph);
  std::vector<SweepPoint> out(taus.size());
  for (std::size_t i = 0; i < taus.size(); ++i) {
    out[i].tau = taus[i];
    out[i].edges = static_cast<std::size_t>(std::count_if(
        ix.edges.begin(), ix.edges.end(), [&](const IndexedEdge& e) { return e.asymmetry >= taus[i]; }));
    out[i].acyclic = kahn_acyclic(ix.names.size(), ix.edges, taus[i]);
  }
  return out;
}

std::vector<SweepPoint> threshold_sweep(const BinomialGraph& graph, const std::vector<double>& taus) {
  const auto ix = index_graph(graph);
  std::vector<SweepPoint> out(taus.size());
  const auto count = static_cast<std::ptrdiff_t>(taus.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    out[i].tau = taus[i];
    out[i].edges = static_cast<std::size_t>(std::count_if(
        ix.edges.begin(), ix.edges.end(), [&](const IndexedEdge& e) { return e.asymmetry >= taus[i]; }));
    out[i].acyclic = kahn_acyclic(ix.names.size(), ix.edges, taus[i]);
  }
  return out;
}

std::vector<double> even_taus(std::size_t n) {
  if (n < 2) return {0.0};
  std::vector<double> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = static_cast<double>(i) / static_cast<double>(n - 1);
  return t;
}

namespace {

std::string dot_id(std::string_view s) {
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string export_dot(const BinomialGraph& graph, const DotStyle& style) {
  if (style.node_colors.size() != style.instance_buckets.size() + 1 ||
      style.edge_colors.size() != style.asymmetry_buckets.size() + 1) {
    throw ArgumentError("dot style needs one more color than bucket bounds");
  }
  std::string out = "digraph " + dot_id(style.graph_name) + " {\n";
  out += "  node [shape=circle, style=filled, fixedsize=true];\n";
  for (const auto& [name, info] : graph.nodes) {
    std::size_t bucket = 0;
    while (bucket < style.instance_buckets.size() && info.total_instances >= style.instance_buckets[bucket]) ++bucket;
    const double width = 0.3 + 0.2 * std::log2(1.0 + static_cast<double>(info.distinct_lists));
    out += "  " + dot_id(name) + " [width=" + format_real(width) + ", fillcolor=" +
           dot_id(style.node_colors[bucket]) + ", tooltip=" +
           dot_id("lists=" + std::to_string(info.distinct_lists) + " instances=" +
                  std::to_string(info.total_instances)) +
           "];\n";
  }
  for (const auto& [edge, e] : graph.edges) {
    std::size_t bucket = 0;
    for (std::size_t i = 0; i < style.asymmetry_buckets.size(); ++i) {
      if (e.asymmetry >= style.asymmetry_buckets[i]) bucket = i + 1;
    }
    out += "  " + dot_id(edge.first) + " -> " + dot_id(edge.second) + " [color=" +
           dot_id(style.edge_colors[bucket]) + ", tooltip=" +
           dot_id("asymmetry=" + format_real(e.asymmetry) + " n=" + std::to_string(e.n_total)) + "];\n";
  }
  out += "}\n";
  return out;
}

std::string cycle_report_json(const BinomialGraph& graph, const CyclicThreshold& result,
                              const std::vector<SweepPoint>& sweep) {
  nlohmann::ordered_json j;
  j["nodes"] = graph.nodes.size();
  j["edges"] = graph.edges.size();
  j["acyclic_everywhere"] = !result.tau.has_value();
  j["tau_star"] = result.tau ? nlohmann::ordered_json(*result.tau) : nlohmann::ordered_json(nullptr);
  j["cycles_truncated"] = result.truncated;
  auto cycles = nlohmann::ordered_json::array();
  for (const auto& c : result.cycles) {
    nlohmann::ordered_json cj;
    cj["nodes"] = c;
    auto edges = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < c.size(); ++i) {
      const Edge key{c[i], c[(i + 1) % c.size()]};
      const auto& e = graph.edges.at(key);
      edges.push_back({{"from", key.first}, {"to", key.second}, {"asymmetry", e.asymmetry},
                       {"n_total", e.n_total}, {"ordinality", e.ordinality}});
    }
    cj["edges"] = edges;
    cycles.push_back(cj);
  }
  j["cycles"] = cycles;
  auto sj = nlohmann::ordered_json::array();
  for (const auto& p : sweep) sj.push_back({{"tau", p.tau}, {"edges", p.edges}, {"acyclic", p.acyclic}});
  j["sweep"] = sj;
  return j.dump(2) + "\n";
}

}  // namespace binomials
