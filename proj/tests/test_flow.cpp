#include "doctest.h"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>

#include "eqc/flow.hpp"
#include "eqc/lattice.hpp"
#include "eqc/percolation.hpp"
#include "eqc/philox.hpp"

using namespace eqc;

namespace {

// Independent oracle: minimum-capacity edge-copy subset whose removal
// disconnects sources from sinks, by exhaustive 2^B search over copies.
// By Menger / max-flow-min-cut this equals the channel count.
int brute_force_cut(const LatticeGraph& g, const std::vector<int>& caps,
                    const std::vector<int>& sources, const std::vector<int>& sinks) {
  std::vector<int> live;  // edge ids with capacity > 0, one entry per copy
  for (const auto& e : g.edges)
    for (int c = 0; c < caps[e.id]; ++c) live.push_back(e.id);
  REQUIRE(live.size() <= 20);
  const std::set<int> sink_set(sinks.begin(), sinks.end());
  int best = static_cast<int>(live.size());
  for (unsigned mask = 0; mask < (1u << live.size()); ++mask) {
    const int removed = std::popcount(mask);
    if (removed >= best) continue;
    std::vector<int> rem(caps);
    for (std::size_t i = 0; i < live.size(); ++i)
      if (mask & (1u << i)) rem[live[i]] -= 1;
    // BFS over edges with remaining capacity
    std::vector<char> seen(g.node_count(), 0);
    std::vector<int> stack(sources);
    for (int s : sources) seen[s] = 1;
    bool connected = false;
    while (!stack.empty() && !connected) {
      const int v = stack.back();
      stack.pop_back();
      if (sink_set.count(v)) connected = true;
      for (const auto& [eid, w] : g.adjacency[v])
        if (rem[eid] > 0 && !seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
    }
    for (int s : sinks)
      if (seen[s]) connected = true;
    if (!connected) best = removed;
  }
  return best;
}

}  // namespace

TEST_CASE("full square patch: channel count equals min terminal degree") {
  const auto g = generate(LatticeKind::Square, 3);
  const auto s = sample(g, {1.0, 0, 0});
  FlowProblem prob{&g, s.open_capacity, {node_at(g, -1, 0)}, {node_at(g, 2, 0)}};
  CHECK(max_channels(prob).value == 4);
}

TEST_CASE("full patches of every kind saturate the coordination number") {
  for (auto kind : {LatticeKind::Square, LatticeKind::Triangle, LatticeKind::Hexagon,
                    LatticeKind::HexagonDoubleBond, LatticeKind::HexagonThirdDoubleBond}) {
    const auto g = generate(kind, 4);
    const auto s = sample(g, {1.0, 0, 0});
    FlowProblem prob{&g, s.open_capacity, {node_at(g, -2, 0)}, {node_at(g, 2, 0)}};
    CHECK(max_channels(prob).value == coordination_number(kind));
  }
}

TEST_CASE("three within-circle disjoint paths on a hand-built configuration") {
  // Open only three edge-disjoint L-shaped routes between (-1,0) and (1,0).
  const auto g = generate(LatticeKind::Square, 2);
  std::vector<int> caps(g.edge_count(), 0);
  auto open_path = [&](const std::vector<std::pair<int, int>>& pts) {
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      const int a = node_at(g, pts[i].first, pts[i].second);
      const int b = node_at(g, pts[i + 1].first, pts[i + 1].second);
      for (const auto& [eid, w] : g.adjacency[a])
        if (w == b) caps[eid] = 1;
    }
  };
  open_path({{-1, 0}, {0, 0}, {1, 0}});
  open_path({{-1, 0}, {-1, 1}, {0, 1}, {1, 1}, {1, 0}});
  open_path({{-1, 0}, {-1, -1}, {0, -1}, {1, -1}, {1, 0}});
  FlowProblem prob{&g, caps, {node_at(g, -1, 0)}, {node_at(g, 1, 0)}};
  CHECK(max_channels(prob).value == 3);
  const auto paths = [&] {
    MaxFlowSolver solver(g, prob.sources, prob.sinks);
    solver.solve(prob.capacities);
    return solver.channel_paths();
  }();
  CHECK(paths.size() == 3);
  std::set<int> used_edges;
  for (const auto& path : paths) {
    CHECK(path.front() == node_at(g, -1, 0));
    CHECK(path.back() == node_at(g, 1, 0));
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      bool found = false;
      for (const auto& [eid, w] : g.adjacency[path[i]])
        if (w == path[i + 1] && caps[eid] > 0 && !used_edges.count(eid)) {
          used_edges.insert(eid);
          found = true;
          break;
        }
      CHECK(found);
    }
  }
}

TEST_CASE("max flow agrees with the brute-force min cut on random instances") {
  const auto g = generate(LatticeKind::Square, 1);  // 12 bond copies
  const int A = node_at(g, -1, 0), B = node_at(g, 1, 0);
  MaxFlowSolver solver(g, std::vector<int>{A}, std::vector<int>{B});
  for (std::uint64_t t = 0; t < 1000; ++t) {
    const double p = 0.2 + 0.6 * to_uniform01(
        Philox4x32::generate(555, static_cast<std::uint32_t>(t), 0, 0, 1).x[0]);
    const auto s = sample(g, {p, 777, t});
    const int flow = solver.solve(s.open_capacity);
    const int cut = brute_force_cut(g, s.open_capacity, {A}, {B});
    REQUIRE(flow == cut);
  }
}

TEST_CASE("min_cut_edges is a certificate with capacity equal to the flow") {
  const auto g = generate(LatticeKind::Square, 2);
  const int A = node_at(g, -1, 0), B = node_at(g, 1, 0);
  MaxFlowSolver solver(g, std::vector<int>{A}, std::vector<int>{B});
  for (std::uint64_t t = 0; t < 200; ++t) {
    const auto s = sample(g, {0.55, 31, t});
    const int flow = solver.solve(s.open_capacity);
    const auto cut = solver.min_cut_edges();
    int cap = 0;
    for (int eid : cut) cap += s.open_capacity[eid];
    CHECK(cap == flow);
    // Removing the cut really disconnects A from B.
    std::vector<int> rem(s.open_capacity);
    for (int eid : cut) rem[eid] = 0;
    std::vector<char> seen(g.node_count(), 0);
    std::vector<int> stack{A};
    seen[A] = 1;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (const auto& [eid, w] : g.adjacency[v])
        if (rem[eid] > 0 && !seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
    }
    CHECK(!seen[B]);
  }
}

TEST_CASE("double bonds carry capacity 2 through the flow") {
  const auto g = generate(LatticeKind::HexagonDoubleBond, 3);
  const auto s = sample(g, {1.0, 0, 0});
  FlowProblem prob{&g, s.open_capacity, {node_at(g, 0, 0)}, {node_at(g, 2, 0)}};
  CHECK(max_channels(prob).value == 6);
}

TEST_CASE("to-infinity from a full patch gives the coordination number") {
  const auto g = generate(LatticeKind::Square, 4);
  const auto s = sample(g, {1.0, 0, 0});
  const std::vector<int> terms{node_at(g, 0, 0)};
  const auto prob = to_infinity_problem(g, s, terms);
  CHECK(max_channels(prob).value == 4);
}

TEST_CASE("to-infinity rejects terminals on the rim") {
  const auto g = generate(LatticeKind::Square, 2);
  const auto s = sample(g, {1.0, 0, 0});
  const std::vector<int> terms{node_at(g, 2, 0)};
  CHECK_THROWS_AS(to_infinity_problem(g, s, terms), std::invalid_argument);
}

TEST_CASE("empty capacities give zero flow") {
  const auto g = generate(LatticeKind::Triangle, 2);
  std::vector<int> caps(g.edge_count(), 0);
  FlowProblem prob{&g, caps, {node_at(g, 0, 0)}, {node_at(g, 1, 0)}};
  CHECK(max_channels(prob).value == 0);
  CHECK(min_cut(prob).empty());
}
