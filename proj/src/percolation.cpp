#include "eqc/percolation.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "eqc/philox.hpp"

namespace eqc {

void sample_into(const LatticeGraph& graph, const PercolationParams& params,
                 std::span<const double> per_edge_p, std::vector<int>& out) {
  out.assign(graph.edges.size(), 0);
  for (const auto& e : graph.edges) {
    const double p = per_edge_p.empty() ? params.p : per_edge_p[e.id];
    int open = 0;
    for (int copy = 0; copy < e.mult; ++copy) {
      const double u = bond_uniform(params.master_seed, params.trial_index,
                                    static_cast<std::uint32_t>(e.id),
                                    static_cast<std::uint32_t>(copy));
      if (u < p) ++open;
    }
    out[e.id] = open;
  }
}

PercolationSample sample(const LatticeGraph& graph, const PercolationParams& params) {
  return sample(graph, params, {});
}

PercolationSample sample(const LatticeGraph& graph, const PercolationParams& params,
                         std::span<const double> per_edge_p) {
  if (per_edge_p.empty() && !(params.p >= 0.0 && params.p <= 1.0)) {
    throw std::invalid_argument("p must lie in [0,1]");
  }
  PercolationSample s;
  sample_into(graph, params, per_edge_p, s.open_capacity);
  return s;
}

void enumerate_all(const LatticeGraph& graph, double p,
                   const std::function<void(const PercolationSample&, double)>& visit,
                   int copy_cap) {
  const long copies = graph.total_copies();
  if (copies > copy_cap) {
    throw std::invalid_argument("bond-copy count exceeds enumeration cap");
  }
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0,1]");
  // Copy c of edge e maps to bit position offset[e] + c.
  std::vector<int> offset(graph.edges.size(), 0);
  int bit = 0;
  for (const auto& e : graph.edges) {
    offset[e.id] = bit;
    bit += e.mult;
  }
  PercolationSample s;
  for (std::uint64_t mask = 0; mask < (1ull << copies); ++mask) {
    s.open_capacity.assign(graph.edges.size(), 0);
    for (const auto& e : graph.edges) {
      const std::uint64_t bits = (mask >> offset[e.id]) & ((1ull << e.mult) - 1);
      s.open_capacity[e.id] = static_cast<int>(std::popcount(bits));
    }
    const int open = static_cast<int>(std::popcount(mask));
    const double weight =
        std::pow(p, open) * std::pow(1.0 - p, static_cast<double>(copies - open));
    visit(s, weight);
  }
}

}  // namespace eqc
