#include "eqc/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "json.hpp"

namespace eqc {

namespace {

constexpr double kRoot3Half = 0.8660254037844386;

struct RawNode {
  int ci, cj, sub;   // cell coordinates + sublattice
  long ky, kx;       // integer row-major sort keys (row = y)
  double x, y;
};

}  // namespace

std::string to_string(LatticeKind kind) {
  switch (kind) {
    case LatticeKind::Square: return "square";
    case LatticeKind::Triangle: return "triangle";
    case LatticeKind::Hexagon: return "hexagon";
    case LatticeKind::HexagonDoubleBond: return "dhex";
    case LatticeKind::HexagonThirdDoubleBond: return "tdhex";
  }
  throw std::logic_error("unknown LatticeKind");
}

LatticeKind lattice_kind_from_string(const std::string& name) {
  if (name == "square") return LatticeKind::Square;
  if (name == "triangle") return LatticeKind::Triangle;
  if (name == "hexagon") return LatticeKind::Hexagon;
  if (name == "dhex") return LatticeKind::HexagonDoubleBond;
  if (name == "tdhex") return LatticeKind::HexagonThirdDoubleBond;
  throw std::invalid_argument("unknown lattice kind: " + name);
}

int coordination_number(LatticeKind kind) {
  switch (kind) {
    case LatticeKind::Square: return 4;
    case LatticeKind::Triangle: return 6;
    case LatticeKind::Hexagon: return 3;
    case LatticeKind::HexagonDoubleBond: return 6;
    case LatticeKind::HexagonThirdDoubleBond: return 4;
  }
  throw std::logic_error("unknown LatticeKind");
}

int LatticeGraph::incident_multiplicity(int node) const {
  int total = 0;
  for (const auto& [eid, other] : adjacency[node]) total += edges[eid].mult;
  return total;
}

long LatticeGraph::total_copies() const {
  long total = 0;
  for (const auto& e : edges) total += e.mult;
  return total;
}

bool LatticeGraph::has_interior_margin(int node) const {
  if (!is_interior(node)) return false;
  for (const auto& [eid, other] : adjacency[node]) {
    if (!is_interior(other)) return false;
  }
  return true;
}

double scp_from_state(const EntangledBondSpec& spec) {
  if (!(spec.lambda1 >= 0.5 && spec.lambda1 <= 1.0)) {
    throw std::invalid_argument("lambda1 must lie in [1/2, 1]");
  }
  return std::min(1.0, 2.0 * (1.0 - spec.lambda1));
}

namespace {

LatticeGraph assemble(LatticeKind kind, int extent, std::vector<RawNode> raw,
                      const std::vector<std::tuple<int, int, int, int, int, int, int>>& raw_edges) {
  // raw_edges entries: (ci,cj,sub, ci2,cj2,sub2, mult)
  std::stable_sort(raw.begin(), raw.end(), [](const RawNode& a, const RawNode& b) {
    return std::tie(a.ky, a.kx) < std::tie(b.ky, b.kx);
  });
  LatticeGraph g;
  g.kind = kind;
  g.extent = extent;
  g.nodes.reserve(raw.size());
  for (int id = 0; id < static_cast<int>(raw.size()); ++id) {
    const auto& r = raw[id];
    g.nodes.push_back({id, r.x, r.y});
    g.site_index[{r.ci, r.cj, r.sub}] = id;
  }
  g.adjacency.assign(g.nodes.size(), {});
  for (const auto& [ci, cj, sub, ci2, cj2, sub2, mult] : raw_edges) {
    auto it_u = g.site_index.find({ci, cj, sub});
    auto it_v = g.site_index.find({ci2, cj2, sub2});
    if (it_u == g.site_index.end() || it_v == g.site_index.end()) continue;
    const int u = it_u->second;
    const int v = it_v->second;
    const int id = static_cast<int>(g.edges.size());
    g.edges.push_back({id, std::min(u, v), std::max(u, v), mult});
    g.adjacency[u].emplace_back(id, v);
    g.adjacency[v].emplace_back(id, u);
  }
  // Re-number edges in (u, v) order so the enumeration is position-stable.
  std::vector<int> order(g.edges.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return std::tie(g.edges[a].u, g.edges[a].v) < std::tie(g.edges[b].u, g.edges[b].v);
  });
  std::vector<LatticeEdge> sorted;
  sorted.reserve(g.edges.size());
  std::vector<int> new_id(g.edges.size());
  for (size_t i = 0; i < order.size(); ++i) {
    LatticeEdge e = g.edges[order[i]];
    new_id[e.id] = static_cast<int>(i);
    e.id = static_cast<int>(i);
    sorted.push_back(e);
  }
  g.edges = std::move(sorted);
  for (auto& adj : g.adjacency) {
    for (auto& [eid, other] : adj) eid = new_id[eid];
    std::sort(adj.begin(), adj.end());
  }
  return g;
}

LatticeGraph generate_square(int L) {
  std::vector<RawNode> raw;
  std::vector<std::tuple<int, int, int, int, int, int, int>> edges;
  for (int j = -L; j <= L; ++j) {
    for (int i = -L; i <= L; ++i) {
      raw.push_back({i, j, 0, j, i, double(i), double(j)});
      edges.emplace_back(i, j, 0, i + 1, j, 0, 1);
      edges.emplace_back(i, j, 0, i, j + 1, 0, 1);
    }
  }
  return assemble(LatticeKind::Square, L, std::move(raw), edges);
}

LatticeGraph generate_triangle(int L) {
  std::vector<RawNode> raw;
  std::vector<std::tuple<int, int, int, int, int, int, int>> edges;
  for (int j = -L; j <= L; ++j) {
    for (int i = -L; i <= L; ++i) {
      raw.push_back({i, j, 0, j, 2 * long{i} + j, i + 0.5 * j, kRoot3Half * j});
      edges.emplace_back(i, j, 0, i + 1, j, 0, 1);
      edges.emplace_back(i, j, 0, i, j + 1, 0, 1);
      edges.emplace_back(i, j, 0, i - 1, j + 1, 0, 1);
    }
  }
  return assemble(LatticeKind::Triangle, L, std::move(raw), edges);
}

// Honeycomb with cell vectors a1 = (sqrt3, 0), a2 = (sqrt3/2, 3/2);
// basis site A at the cell origin, B at A + (0, 1).
LatticeGraph generate_honeycomb(LatticeKind kind, int L) {
  const double r3 = 2.0 * kRoot3Half;
  std::vector<RawNode> raw;
  std::vector<std::tuple<int, int, int, int, int, int, int>> edges;
  const int vertical_mult = (kind == LatticeKind::HexagonDoubleBond)    ? 2
                            : (kind == LatticeKind::HexagonThirdDoubleBond) ? 2
                                                                            : 1;
  const int slanted_mult = (kind == LatticeKind::HexagonDoubleBond) ? 2 : 1;
  for (int j = -L; j <= L; ++j) {
    for (int i = -L; i <= L; ++i) {
      const double ax = r3 * i + kRoot3Half * j;
      const double ay = 1.5 * j;
      raw.push_back({i, j, 0, 3 * long{j}, 2 * long{i} + j, ax, ay});
      raw.push_back({i, j, 1, 3 * long{j} + 2, 2 * long{i} + j, ax, ay + 1.0});
      edges.emplace_back(i, j, 0, i, j, 1, vertical_mult);       // A - B same cell
      edges.emplace_back(i, j, 0, i, j - 1, 1, slanted_mult);    // down-left
      edges.emplace_back(i, j, 0, i + 1, j - 1, 1, slanted_mult);  // down-right
    }
  }
  return assemble(kind, L, std::move(raw), edges);
}

}  // namespace

LatticeGraph generate(LatticeKind kind, int extent) {
  if (extent < 1) throw std::invalid_argument("extent must be >= 1");
  switch (kind) {
    case LatticeKind::Square: return generate_square(extent);
    case LatticeKind::Triangle: return generate_triangle(extent);
    case LatticeKind::Hexagon:
    case LatticeKind::HexagonDoubleBond:
    case LatticeKind::HexagonThirdDoubleBond:
      return generate_honeycomb(kind, extent);
  }
  throw std::logic_error("unknown LatticeKind");
}

int node_at(const LatticeGraph& graph, int offset_a, int offset_b) {
  std::tuple<int, int, int> key;
  switch (graph.kind) {
    case LatticeKind::Square:
    case LatticeKind::Triangle:
      key = {offset_a, offset_b, 0};
      break;
    default: {
      // Zigzag along +x: A(0,j), B(1,j-1), A(1,j), B(2,j-1), ...
      if (((offset_a % 2) + 2) % 2 == 0) {
        key = {offset_a / 2, offset_b, 0};
      } else {
        key = {(offset_a + 1) / 2, offset_b - 1, 1};
      }
      break;
    }
  }
  auto it = graph.site_index.find(key);
  if (it == graph.site_index.end()) {
    throw std::out_of_range("lattice offset outside the patch");
  }
  return it->second;
}

std::vector<int> boundary_nodes(const LatticeGraph& graph) {
  std::vector<int> rim;
  const int coord = coordination_number(graph.kind);
  for (const auto& n : graph.nodes) {
    if (graph.incident_multiplicity(n.id) < coord) rim.push_back(n.id);
  }
  return rim;
}

std::string to_json(const LatticeGraph& graph) {
  nlohmann::json j;
  j["kind"] = to_string(graph.kind);
  j["extent"] = graph.extent;
  auto& nodes = j["nodes"] = nlohmann::json::array();
  for (const auto& n : graph.nodes) {
    nodes.push_back({{"id", n.id}, {"x", n.x}, {"y", n.y}});
  }
  auto& edges = j["edges"] = nlohmann::json::array();
  for (const auto& e : graph.edges) {
    edges.push_back({{"id", e.id}, {"u", e.u}, {"v", e.v}, {"mult", e.mult}});
  }
  return j.dump();
}

}  // namespace eqc
