#include "eqc/transform.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "eqc/philox.hpp"

namespace eqc {

namespace {

constexpr double kPStar = 0.5857864376269049;  // 2 - sqrt(2)
constexpr double kInvRoot3 = 0.5773502691896258;

double forward_raw(double p) { return 2.0 * (1.0 - (1.0 - p / 2.0) * (1.0 - p / 2.0)); }

// Joint SCP saturates at 1 above p = 2 - sqrt 2.
double forward_clamped(double p) { return std::min(1.0, forward_raw(p)); }

// Assemble a graph from kept nodes (in their current row-major order) and a
// deduplicated undirected edge multiset.
LatticeGraph build_graph(LatticeKind kind, int extent,
                         const LatticeGraph& source, const std::vector<int>& kept,
                         const std::vector<std::pair<double, double>>& pos,
                         const std::vector<std::tuple<int, int, int>>& keys,
                         std::map<std::pair<int, int>, int>& mult_by_pair) {
  LatticeGraph g;
  g.kind = kind;
  g.extent = extent;
  std::vector<int> new_id(source.node_count(), -1);
  for (size_t i = 0; i < kept.size(); ++i) new_id[kept[i]] = static_cast<int>(i);
  for (size_t i = 0; i < kept.size(); ++i) {
    g.nodes.push_back({static_cast<int>(i), pos[i].first, pos[i].second});
    g.site_index[keys[i]] = static_cast<int>(i);
  }
  g.adjacency.assign(g.nodes.size(), {});
  for (const auto& [pair, mult] : mult_by_pair) {
    const int u = new_id[pair.first];
    const int v = new_id[pair.second];
    const int id = static_cast<int>(g.edges.size());
    g.edges.push_back({id, std::min(u, v), std::max(u, v), mult});
  }
  std::sort(g.edges.begin(), g.edges.end(), [](const LatticeEdge& a, const LatticeEdge& b) {
    return std::tie(a.u, a.v) < std::tie(b.u, b.v);
  });
  for (int i = 0; i < static_cast<int>(g.edges.size()); ++i) g.edges[i].id = i;
  for (const auto& e : g.edges) {
    g.adjacency[e.u].emplace_back(e.id, e.v);
    g.adjacency[e.v].emplace_back(e.id, e.u);
  }
  return g;
}

// Sublattice (0 = A, 1 = B) of a honeycomb node, recovered from site_index.
std::vector<int> sublattice_of(const LatticeGraph& g) {
  std::vector<int> sub(g.node_count(), 0);
  for (const auto& [key, id] : g.site_index) sub[id] = std::get<2>(key);
  return sub;
}

std::vector<std::tuple<int, int, int>> cell_keys(const LatticeGraph& g) {
  std::vector<std::tuple<int, int, int>> keys(g.node_count());
  for (const auto& [key, id] : g.site_index) keys[id] = key;
  return keys;
}

LatticeGraph contract_to_triangle(const LatticeGraph& src) {
  const auto sub = sublattice_of(src);
  const auto keys = cell_keys(src);
  std::vector<int> kept;
  std::vector<std::pair<double, double>> pos;
  std::vector<std::tuple<int, int, int>> kept_keys;
  for (const auto& n : src.nodes) {
    if (sub[n.id] == 0) {
      kept.push_back(n.id);
      pos.emplace_back(n.x * kInvRoot3, n.y * kInvRoot3);
      kept_keys.push_back(keys[n.id]);
    }
  }
  std::map<std::pair<int, int>, int> mult;
  for (const auto& n : src.nodes) {
    if (sub[n.id] != 1) continue;
    // Swapping at this node pairs its double bonds cyclically into bonds
    // between the hexagon neighbors (the triangle edges).
    std::vector<int> nbrs;
    for (const auto& [eid, other] : src.adjacency[n.id]) nbrs.push_back(other);
    std::sort(nbrs.begin(), nbrs.end());
    const int m = static_cast<int>(nbrs.size());
    if (m < 2) continue;
    if (m == 2) {
      const auto key = std::minmax(nbrs[0], nbrs[1]);
      mult[{key.first, key.second}] += 2;
    } else {
      for (int i = 0; i < m; ++i) {
        const auto key = std::minmax(nbrs[i], nbrs[(i + 1) % m]);
        mult[{key.first, key.second}] += 1;
      }
    }
  }
  return build_graph(LatticeKind::Triangle, src.extent, src, kept, pos, kept_keys, mult);
}

LatticeGraph contract_to_square(const LatticeGraph& src) {
  const auto sub = sublattice_of(src);
  const auto keys = cell_keys(src);
  // Merge each double bond's endpoints (B absorbed into A of the same cell).
  std::vector<int> merged_into(src.node_count(), -1);
  for (const auto& e : src.edges) {
    if (e.mult == 2) {
      const int a = sub[e.u] == 0 ? e.u : e.v;
      const int b = sub[e.u] == 0 ? e.v : e.u;
      merged_into[b] = a;
    }
  }
  std::vector<int> kept;
  std::vector<std::pair<double, double>> pos;
  std::vector<std::tuple<int, int, int>> kept_keys;
  for (const auto& n : src.nodes) {
    if (sub[n.id] != 0) continue;
    kept.push_back(n.id);
    pos.emplace_back(n.x * kInvRoot3, (n.y + 0.5) * kInvRoot3);
    kept_keys.push_back(keys[n.id]);
  }
  std::map<std::pair<int, int>, int> mult;
  for (const auto& e : src.edges) {
    if (e.mult == 2) continue;
    int u = merged_into[e.u] >= 0 ? merged_into[e.u] : e.u;
    int v = merged_into[e.v] >= 0 ? merged_into[e.v] : e.v;
    // A boundary B node with no double bond has no merge target; its dangling
    // single bonds are dropped with it.
    if (sub[u] != 0 || sub[v] != 0 || u == v) continue;
    const auto key = std::minmax(u, v);
    mult[{key.first, key.second}] += 1;
  }
  return build_graph(LatticeKind::Square, src.extent, src, kept, pos, kept_keys, mult);
}

LatticeGraph with_multiplicity_one(const LatticeGraph& src, LatticeKind kind) {
  LatticeGraph g = src;
  g.kind = kind;
  for (auto& e : g.edges) e.mult = 1;
  return g;
}

}  // namespace

std::string to_string(TransformKind kind) {
  switch (kind) {
    case TransformKind::DoubleHexToTriangle: return "dhex2tri";
    case TransformKind::DoubleHexSeparate: return "dhexsep";
    case TransformKind::ThirdDoubleHexToSquare: return "tdhex2sq";
    case TransformKind::ThirdDoubleHexJoint: return "tdhexjoint";
    case TransformKind::ThirdDoubleHexSeparate: return "tdhexsep";
  }
  throw std::logic_error("unknown TransformKind");
}

TransformKind transform_kind_from_string(const std::string& name) {
  if (name == "dhex2tri") return TransformKind::DoubleHexToTriangle;
  if (name == "dhexsep") return TransformKind::DoubleHexSeparate;
  if (name == "tdhex2sq") return TransformKind::ThirdDoubleHexToSquare;
  if (name == "tdhexjoint") return TransformKind::ThirdDoubleHexJoint;
  if (name == "tdhexsep") return TransformKind::ThirdDoubleHexSeparate;
  throw std::invalid_argument("unknown transform kind: " + name);
}

double scp_forward(double p) {
  if (!(p >= 0.0 && p <= kPStar + 1e-12)) {
    throw std::invalid_argument("scp_forward domain is [0, 2 - sqrt(2)]");
  }
  return forward_raw(p);
}

double scp_inverse(double p_prime) {
  if (!(p_prime >= 0.0 && p_prime <= 1.0)) {
    throw std::invalid_argument("scp_inverse domain is [0, 1]");
  }
  return 2.0 * (1.0 - std::sqrt(1.0 - p_prime / 2.0));
}

std::vector<LatticeGraph> transform_graph(const LatticeGraph& graph, TransformKind kind) {
  const LatticeKind expected = (kind == TransformKind::DoubleHexToTriangle ||
                                kind == TransformKind::DoubleHexSeparate)
                                   ? LatticeKind::HexagonDoubleBond
                                   : LatticeKind::HexagonThirdDoubleBond;
  if (graph.kind != expected) {
    throw std::invalid_argument("transform does not apply to this lattice kind");
  }
  switch (kind) {
    case TransformKind::DoubleHexToTriangle:
      return {contract_to_triangle(graph)};
    case TransformKind::DoubleHexSeparate: {
      const LatticeGraph copy = with_multiplicity_one(graph, LatticeKind::Hexagon);
      return {copy, copy};
    }
    case TransformKind::ThirdDoubleHexToSquare:
      return {contract_to_square(graph)};
    case TransformKind::ThirdDoubleHexJoint:
      return {with_multiplicity_one(graph, LatticeKind::Hexagon)};
    case TransformKind::ThirdDoubleHexSeparate:
      return {graph};
  }
  throw std::logic_error("unknown TransformKind");
}

namespace {

// N(1) per terminal node, frozen to the source lattice (double bonds counted
// with multiplicity; Eq.-(8) bookkeeping never changes with the transform).
int source_n1_per_node(BondStrategy strategy) {
  switch (strategy) {
    case BondStrategy::DoubleHexJoint:
    case BondStrategy::TriangleSwapped:
    case BondStrategy::HexSeparatePair:
      return 6;  // double-bond hexagon
    case BondStrategy::ThirdDoubleJoint:
    case BondStrategy::ThirdDoubleSeparate:
    case BondStrategy::SquareSwapped:
      return 4;  // hexagon with 1/3 double bonds
  }
  throw std::logic_error("unknown BondStrategy");
}

}  // namespace

TransformedEqc strategy_eqc(BondStrategy strategy, int extent,
                            const ScenarioSpec& scenario, double p, long trials,
                            std::uint64_t master_seed, int threads) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0,1]");
  LatticeGraph graph;
  std::vector<double> per_edge_p;
  int copies = 1;
  double uniform_p = p;
  switch (strategy) {
    case BondStrategy::DoubleHexJoint:
      graph = generate(LatticeKind::Hexagon, extent);
      uniform_p = forward_clamped(p);
      break;
    case BondStrategy::TriangleSwapped:
      graph = generate(LatticeKind::Triangle, extent);
      break;
    case BondStrategy::HexSeparatePair:
      graph = generate(LatticeKind::Hexagon, extent);
      copies = 2;
      break;
    case BondStrategy::ThirdDoubleJoint: {
      const LatticeGraph tdhex = generate(LatticeKind::HexagonThirdDoubleBond, extent);
      per_edge_p.resize(tdhex.edges.size());
      for (const auto& e : tdhex.edges) {
        per_edge_p[e.id] = e.mult == 2 ? forward_clamped(p) : p;
      }
      graph = with_multiplicity_one(tdhex, LatticeKind::Hexagon);
      break;
    }
    case BondStrategy::ThirdDoubleSeparate:
      graph = generate(LatticeKind::HexagonThirdDoubleBond, extent);
      break;
    case BondStrategy::SquareSwapped:
      graph = generate(LatticeKind::Square, extent);
      break;
  }
  Terminals terminals = place_terminals(graph, scenario);
  const size_t party =
      terminals.sinks.empty()
          ? terminals.sources.size()
          : std::min(terminals.sources.size(), terminals.sinks.size());
  terminals.normalizer = static_cast<int>(party) * source_n1_per_node(strategy);
  TransformedEqc out;
  out.est = mc_channels(graph, terminals, uniform_p, per_edge_p, trials, master_seed,
                        threads, copies);
  return out;
}

TransformedEqc transformed_eqc(LatticeKind source_kind, int extent, TransformKind kind,
                               const ScenarioSpec& scenario, double p, long trials,
                               std::uint64_t master_seed, int threads) {
  const LatticeKind expected = (kind == TransformKind::DoubleHexToTriangle ||
                                kind == TransformKind::DoubleHexSeparate)
                                   ? LatticeKind::HexagonDoubleBond
                                   : LatticeKind::HexagonThirdDoubleBond;
  if (source_kind != expected) {
    throw std::invalid_argument("transform does not apply to this lattice kind");
  }
  BondStrategy strategy;
  switch (kind) {
    case TransformKind::DoubleHexToTriangle: strategy = BondStrategy::TriangleSwapped; break;
    case TransformKind::DoubleHexSeparate: strategy = BondStrategy::HexSeparatePair; break;
    case TransformKind::ThirdDoubleHexToSquare: strategy = BondStrategy::SquareSwapped; break;
    case TransformKind::ThirdDoubleHexJoint: strategy = BondStrategy::ThirdDoubleJoint; break;
    case TransformKind::ThirdDoubleHexSeparate: strategy = BondStrategy::ThirdDoubleSeparate; break;
    default: throw std::logic_error("unknown TransformKind");
  }
  return strategy_eqc(strategy, extent, scenario, p, trials, master_seed, threads);
}

CrossoverScan crossover_scan_pair(BondStrategy original, BondStrategy transformed,
                                  std::span<const double> p_grid, int extent,
                                  const ScenarioSpec& scenario, long trials,
                                  std::uint64_t master_seed, int threads) {
  CrossoverScan scan;
  for (size_t i = 0; i < p_grid.size(); ++i) {
    const double p = p_grid[i];
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p grid must lie in [0,1]");
    const std::uint64_t seed = derive_seed(master_seed, i);  // shared per point
    CrossoverPoint pt;
    pt.p = p;
    pt.original = strategy_eqc(original, extent, scenario, p, trials, seed, threads).est;
    pt.transformed =
        strategy_eqc(transformed, extent, scenario, p, trials, seed, threads).est;
    pt.diff = pt.transformed.mean - pt.original.mean;
    pt.diff_stderr = std::sqrt(pt.original.std_error * pt.original.std_error +
                               pt.transformed.std_error * pt.transformed.std_error);
    scan.points.push_back(pt);
  }
  // Sign changes between statistically significant points only.
  double prev_p = 0.0;
  int prev_sign = 0;
  for (const auto& pt : scan.points) {
    if (std::fabs(pt.diff) <= 2.0 * pt.diff_stderr) continue;
    const int sign = pt.diff > 0.0 ? 1 : -1;
    if (prev_sign != 0 && sign != prev_sign) {
      ++scan.sign_changes;
      if (!scan.bracket) scan.bracket = std::make_pair(prev_p, pt.p);
    }
    prev_sign = sign;
    prev_p = pt.p;
  }
  return scan;
}

CrossoverScan crossover_scan(TransformKind kind, std::span<const double> p_grid,
                             int extent, const ScenarioSpec& scenario, long trials,
                             std::uint64_t master_seed, int threads) {
  BondStrategy original, transformed;
  switch (kind) {
    case TransformKind::DoubleHexToTriangle:
      original = BondStrategy::DoubleHexJoint;
      transformed = BondStrategy::TriangleSwapped;
      break;
    case TransformKind::DoubleHexSeparate:
      original = BondStrategy::DoubleHexJoint;
      transformed = BondStrategy::HexSeparatePair;
      break;
    case TransformKind::ThirdDoubleHexToSquare:
    case TransformKind::ThirdDoubleHexSeparate:
      original = BondStrategy::ThirdDoubleSeparate;
      transformed = BondStrategy::SquareSwapped;
      break;
    case TransformKind::ThirdDoubleHexJoint:
      original = BondStrategy::ThirdDoubleJoint;
      transformed = BondStrategy::SquareSwapped;
      break;
    default:
      throw std::logic_error("unknown TransformKind");
  }
  return crossover_scan_pair(original, transformed, p_grid, extent, scenario, trials,
                             master_seed, threads);
}

}  // namespace eqc
