#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace eqc {

enum class LatticeKind {
  Square,
  Triangle,
  Hexagon,
  HexagonDoubleBond,
  HexagonThirdDoubleBond,
};

std::string to_string(LatticeKind kind);
LatticeKind lattice_kind_from_string(const std::string& name);

// Per-node single-bond count, double bonds counted twice.
int coordination_number(LatticeKind kind);

struct LatticeNode {
  int id = 0;
  double x = 0.0;
  double y = 0.0;
};

struct LatticeEdge {
  int id = 0;
  int u = 0;
  int v = 0;
  int mult = 1;  // parallel entangled pairs on this bond
};

// Finite patch of a periodic 2D lattice, unit nearest-neighbor spacing.
// Immutable after generation; safe to share across threads.
struct LatticeGraph {
  LatticeKind kind = LatticeKind::Square;
  int extent = 0;
  std::vector<LatticeNode> nodes;
  std::vector<LatticeEdge> edges;
  // adjacency[v] -> (edge id, neighbor id), one entry per edge record
  std::vector<std::vector<std::pair<int, int>>> adjacency;
  // (cell_i, cell_j, sublattice) -> node id; sublattice is 0 except on
  // honeycomb kinds where 1 is the second basis site
  std::map<std::tuple<int, int, int>, int> site_index;

  int node_count() const { return static_cast<int>(nodes.size()); }
  int edge_count() const { return static_cast<int>(edges.size()); }

  // Total incident bond multiplicity of a node.
  int incident_multiplicity(int node) const;
  // Total bond-copy count over the whole patch.
  long total_copies() const;
  bool is_interior(int node) const {
    return incident_multiplicity(node) == coordination_number(kind);
  }
  // Interior with a rim margin: the node and all its neighbors are interior.
  bool has_interior_margin(int node) const;
};

// Bond state sqrt(l1)|00> + sqrt(l2)|11>, l1 >= l2.
struct EntangledBondSpec {
  double lambda1 = 0.5;
};

// Optimal singlet conversion probability, p = min(1, 2(1 - lambda1)).
double scp_from_state(const EntangledBondSpec& spec);

// Generate the patch of all cells within +-L of the origin along the
// lattice's natural axes (axis-aligned parallelogram). Node ids are
// row-major by position. Deterministic for fixed (kind, L).
LatticeGraph generate(LatticeKind kind, int extent);

// Node at a lattice-axis offset from the origin. For honeycomb kinds the
// first axis walks the nearest-neighbor zigzag (unit steps), so offset
// (1,0) is a nearest neighbor of the origin.
int node_at(const LatticeGraph& graph, int offset_a, int offset_b);

// All nodes whose incident multiplicity is below the coordination number.
std::vector<int> boundary_nodes(const LatticeGraph& graph);

// {kind, extent, nodes:[{id,x,y}], edges:[{id,u,v,mult}]}
std::string to_json(const LatticeGraph& graph);

}  // namespace eqc
