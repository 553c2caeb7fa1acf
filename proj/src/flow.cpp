#include "eqc/flow.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace eqc {

namespace {
constexpr int kInf = std::numeric_limits<int>::max() / 4;
}

MaxFlowSolver::MaxFlowSolver(const LatticeGraph& graph, std::span<const int> sources,
                             std::span<const int> sinks)
    : graph_(&graph) {
  if (sources.empty() || sinks.empty()) {
    throw std::invalid_argument("sources and sinks must be nonempty");
  }
  for (int s : sources) {
    if (std::find(sinks.begin(), sinks.end(), s) != sinks.end()) {
      throw std::invalid_argument("sources and sinks must be disjoint");
    }
  }
  const int n = graph.node_count();
  n_ = n + 2;
  source_ = n;
  sink_ = n + 1;
  arcs_.assign(n_, {});
  edge_arc_.resize(graph.edges.size());

  auto add_arc = [&](int u, int v, int cap_uv, int cap_vu, int edge) {
    const int iu = static_cast<int>(arcs_[u].size());
    const int iv = static_cast<int>(arcs_[v].size());
    arcs_[u].push_back({v, iv, cap_uv, edge});
    arcs_[v].push_back({u, iu, cap_vu, edge});
    return iu;
  };

  // Undirected bond: antiparallel arcs sharing the bond's capacity.
  for (const auto& e : graph.edges) {
    const int idx = add_arc(e.u, e.v, 0, 0, e.id);
    edge_arc_[e.id] = {e.u, idx};
  }
  for (int s : sources) add_arc(source_, s, kInf, 0, -1);
  for (int t : sinks) add_arc(t, sink_, kInf, 0, -1);

  level_.resize(n_);
  iter_.resize(n_);
  queue_.reserve(n_);
}

bool MaxFlowSolver::bfs_levels() {
  std::fill(level_.begin(), level_.end(), -1);
  queue_.clear();
  queue_.push_back(source_);
  level_[source_] = 0;
  for (size_t head = 0; head < queue_.size(); ++head) {
    const int v = queue_[head];
    for (const Arc& a : arcs_[v]) {
      if (a.cap > 0 && level_[a.to] < 0) {
        level_[a.to] = level_[v] + 1;
        queue_.push_back(a.to);
      }
    }
  }
  return level_[sink_] >= 0;
}

int MaxFlowSolver::dfs_augment(int v, int limit) {
  if (v == sink_) return limit;
  for (int& i = iter_[v]; i < static_cast<int>(arcs_[v].size()); ++i) {
    Arc& a = arcs_[v][i];
    if (a.cap <= 0 || level_[a.to] != level_[v] + 1) continue;
    const int pushed = dfs_augment(a.to, std::min(limit, a.cap));
    if (pushed > 0) {
      a.cap -= pushed;
      arcs_[a.to][a.rev].cap += pushed;
      return pushed;
    }
  }
  level_[v] = -1;
  return 0;
}

int MaxFlowSolver::solve(std::span<const int> edge_capacities) {
  for (const auto& e : graph_->edges) {
    const auto [u, idx] = edge_arc_[e.id];
    Arc& fwd = arcs_[u][idx];
    Arc& bwd = arcs_[fwd.to][fwd.rev];
    const int cap = edge_capacities[e.id];
    fwd.cap = cap;
    bwd.cap = cap;
  }
  // Super arcs retain infinite capacity; restore after previous runs.
  for (Arc& a : arcs_[source_]) {
    a.cap = kInf;
    arcs_[a.to][a.rev].cap = 0;
  }
  for (Arc& a : arcs_[sink_]) {
    a.cap = 0;
    arcs_[a.to][a.rev].cap = kInf;
  }
  int flow = 0;
  while (bfs_levels()) {
    std::fill(iter_.begin(), iter_.end(), 0);
    while (int pushed = dfs_augment(source_, kInf)) flow += pushed;
  }
  return flow;
}

std::vector<int> MaxFlowSolver::min_cut_edges() const {
  std::vector<char> reach(n_, 0);
  std::vector<int> stack{source_};
  reach[source_] = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (const Arc& a : arcs_[v]) {
      if (a.cap > 0 && !reach[a.to]) {
        reach[a.to] = 1;
        stack.push_back(a.to);
      }
    }
  }
  std::vector<int> cut;
  for (const auto& e : graph_->edges) {
    const auto [u, idx] = edge_arc_[e.id];
    const Arc& fwd = arcs_[u][idx];
    const int v = fwd.to;
    // Saturated in the crossing direction and capacity was positive.
    if (reach[u] != reach[v] && fwd.cap + arcs_[v][fwd.rev].cap > 0) {
      cut.push_back(e.id);
    }
  }
  return cut;
}

std::vector<std::vector<int>> MaxFlowSolver::channel_paths() const {
  // Net flow per edge, direction resolved from residual asymmetry.
  std::vector<std::vector<std::pair<int, int>>> out(n_);  // node -> (to, units)
  for (const auto& e : graph_->edges) {
    const auto [u, idx] = edge_arc_[e.id];
    const Arc& fwd = arcs_[u][idx];
    const Arc& bwd = arcs_[fwd.to][fwd.rev];
    const int net_uv = (bwd.cap - fwd.cap) / 2;  // caps started equal
    if (net_uv > 0) out[u].emplace_back(fwd.to, net_uv);
    if (net_uv < 0) out[fwd.to].emplace_back(u, -net_uv);
  }
  for (const Arc& a : arcs_[source_]) {
    const int used = kInf - a.cap;
    if (a.edge == -1 && used > 0) out[source_].emplace_back(a.to, used);
  }
  std::vector<std::vector<int>> paths;
  while (true) {
    // Walk one unit source -> sink.
    std::vector<int> path;
    int v = source_;
    bool advanced = true;
    while (advanced) {
      if (v != source_) path.push_back(v);
      bool at_terminal = false;
      for (const Arc& a : arcs_[v]) {
        if (a.to == sink_ && a.edge == -1 && kInf - a.cap > 0) at_terminal = true;
      }
      advanced = false;
      for (auto& [to, units] : out[v]) {
        if (units > 0) {
          --units;
          v = to;
          advanced = true;
          break;
        }
      }
      if (!advanced && v != source_ && !at_terminal) {
        path.clear();  // dead end (shouldn't happen for a valid decomposition)
      }
    }
    if (path.empty()) break;
    paths.push_back(std::move(path));
  }
  return paths;
}

ChannelCount max_channels(const FlowProblem& problem) {
  MaxFlowSolver solver(*problem.graph, problem.sources, problem.sinks);
  return ChannelCount{solver.solve(problem.capacities)};
}

std::vector<int> min_cut(const FlowProblem& problem) {
  MaxFlowSolver solver(*problem.graph, problem.sources, problem.sinks);
  solver.solve(problem.capacities);
  return solver.min_cut_edges();
}

FlowProblem to_infinity_problem(const LatticeGraph& graph, const PercolationSample& sample,
                                std::span<const int> terminals) {
  FlowProblem problem;
  problem.graph = &graph;
  problem.capacities = sample.open_capacity;
  for (int t : terminals) {
    if (!graph.is_interior(t)) {
      throw std::invalid_argument("to-infinity terminal must be an interior node");
    }
    problem.sources.push_back(t);
  }
  problem.sinks = boundary_nodes(graph);
  return problem;
}

}  // namespace eqc
