#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "eqc/lattice.hpp"
#include "eqc/monte_carlo.hpp"

namespace eqc {

enum class TransformKind {
  DoubleHexToTriangle,      // swap at one sublattice: dhex -> triangle
  DoubleHexSeparate,        // dhex used as two disjoint single-bond hexagons
  ThirdDoubleHexToSquare,   // contract double bonds: tdhex -> square
  ThirdDoubleHexJoint,      // tdhex with each double bond converted jointly
  ThirdDoubleHexSeparate,   // tdhex with copies converted independently
};

std::string to_string(TransformKind kind);
TransformKind transform_kind_from_string(const std::string& name);

// Per-copy SCP p (triangle scale) -> joint SCP p' of a double bond,
// p' = 2(1 - (1 - p/2)^2). Defined for p in [0, 2 - sqrt 2], where p' <= 1.
double scp_forward(double p);
// Inverse mapping, p = 2(1 - sqrt(1 - p'/2)), defined on p' in [0, 1].
double scp_inverse(double p_prime);

// Entanglement-swapping graph surgery. Returns one graph, except for
// DoubleHexSeparate which yields the two single-bond copies.
std::vector<LatticeGraph> transform_graph(const LatticeGraph& graph, TransformKind kind);

// Usage strategies whose EQC curves FIG-4-style scans compare. Every
// strategy is parameterized by the per-copy SCP p of the source lattice and
// normalized by the source lattice's multiplicity-counted N(1).
enum class BondStrategy {
  DoubleHexJoint,        // hexagon bonds converted jointly at min(1, p')
  TriangleSwapped,       // post-swap triangle at p
  HexSeparatePair,       // two disjoint single-bond hexagons at p
  ThirdDoubleJoint,      // double bonds jointly at min(1, p'), singles at p
  ThirdDoubleSeparate,   // all copies independently at p (capacity 2)
  SquareSwapped,         // post-swap square at p
};

struct TransformedEqc {
  EqcEstimate est;  // est.normalizer is the ORIGINAL lattice's N(1)
};

// EQC after transformation, Eq.-(8)-style: channels counted on the new
// network, normalizer frozen to the source lattice at p = 1.
TransformedEqc transformed_eqc(LatticeKind source_kind, int extent, TransformKind kind,
                               const ScenarioSpec& scenario, double p, long trials,
                               std::uint64_t master_seed, int threads = 1);

TransformedEqc strategy_eqc(BondStrategy strategy, int extent,
                            const ScenarioSpec& scenario, double p, long trials,
                            std::uint64_t master_seed, int threads = 1);

struct CrossoverPoint {
  double p = 0.0;
  EqcEstimate original;
  EqcEstimate transformed;
  double diff = 0.0;      // transformed - original
  double diff_stderr = 0.0;
};

struct CrossoverScan {
  std::vector<CrossoverPoint> points;
  int sign_changes = 0;  // between statistically significant (>2 sigma) points
  std::optional<std::pair<double, double>> bracket;  // first sign-change interval
};

// Paired original/transformed curves with shared seeds per grid point.
CrossoverScan crossover_scan(TransformKind kind, std::span<const double> p_grid,
                             int extent, const ScenarioSpec& scenario, long trials,
                             std::uint64_t master_seed, int threads = 1);

CrossoverScan crossover_scan_pair(BondStrategy original, BondStrategy transformed,
                                  std::span<const double> p_grid, int extent,
                                  const ScenarioSpec& scenario, long trials,
                                  std::uint64_t master_seed, int threads = 1);

}  // namespace eqc
