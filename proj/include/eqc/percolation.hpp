#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "eqc/lattice.hpp"

namespace eqc {

struct PercolationParams {
  double p = 1.0;            // singlet conversion probability per bond copy
  std::uint64_t master_seed = 0;
  std::uint64_t trial_index = 0;
};

struct PercolationSample {
  // open_capacity[e] = successfully converted copies of edge e
  std::vector<int> open_capacity;
};

// One realization: each bond copy opens independently with probability p.
// Pure function of (master_seed, trial_index, edge id, copy index).
PercolationSample sample(const LatticeGraph& graph, const PercolationParams& params);

// Same, with a per-edge conversion probability (used by lattice
// transformations where swapped bonds carry a different SCP).
PercolationSample sample(const LatticeGraph& graph, const PercolationParams& params,
                         std::span<const double> per_edge_p);

// Allocation-free variant for hot Monte Carlo loops.
void sample_into(const LatticeGraph& graph, const PercolationParams& params,
                 std::span<const double> per_edge_p, std::vector<int>& out);

// Exact brute-force enumeration of all 2^B bond-copy configurations with
// their probability weights. B = total copies; rejected above copy_cap.
void enumerate_all(const LatticeGraph& graph, double p,
                   const std::function<void(const PercolationSample&, double)>& visit,
                   int copy_cap = 24);

}  // namespace eqc
