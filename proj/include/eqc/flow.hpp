#pragma once

#include <span>
#include <vector>

#include "eqc/lattice.hpp"
#include "eqc/percolation.hpp"

namespace eqc {

// Max-flow instance: each undirected bond carries integral capacity equal to
// its open copy count; nodes are uncapacitated (swapping consumes bonds, not
// nodes).
struct FlowProblem {
  const LatticeGraph* graph = nullptr;
  std::vector<int> capacities;  // per edge id
  std::vector<int> sources;
  std::vector<int> sinks;
};

struct ChannelCount {
  int value = 0;
};

// Reusable Dinic solver over a fixed (graph, sources, sinks) structure.
// Arc layout is built once; solve() only resets capacities, so thousands of
// percolation trials share one instance per thread.
class MaxFlowSolver {
 public:
  MaxFlowSolver(const LatticeGraph& graph, std::span<const int> sources,
                std::span<const int> sinks);

  int solve(std::span<const int> edge_capacities);

  // Residual-reachability cut of the last solve: original edge ids crossing
  // the source side. Total capacity equals the flow value.
  std::vector<int> min_cut_edges() const;

  // Edge-disjoint path decomposition of the last solve (node id sequences,
  // super nodes stripped). Diagnostic.
  std::vector<std::vector<int>> channel_paths() const;

 private:
  struct Arc {
    int to;
    int rev;   // index of reverse arc in arcs_[to]
    int cap;
    int edge;  // original edge id, -1 for super arcs
  };

  bool bfs_levels();
  int dfs_augment(int v, int limit);

  int n_ = 0;  // graph nodes + super source + super sink
  int source_ = 0;
  int sink_ = 0;
  const LatticeGraph* graph_ = nullptr;
  std::vector<std::vector<Arc>> arcs_;
  std::vector<std::pair<int, int>> edge_arc_;  // edge id -> (node, arc index) forward arc
  std::vector<int> level_;
  std::vector<int> iter_;
  std::vector<int> queue_;
};

// Maximum number of edge-disjoint open source-sink paths (exact integral
// max flow; Menger).
ChannelCount max_channels(const FlowProblem& problem);

// A cut certificate for max_channels.
std::vector<int> min_cut(const FlowProblem& problem);

// Terminals send to "infinity", modeled as the patch rim.
FlowProblem to_infinity_problem(const LatticeGraph& graph, const PercolationSample& sample,
                                std::span<const int> terminals);

}  // namespace eqc
