#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "eqc/lattice.hpp"

namespace eqc {

enum class ScenarioMode { PointToPoint, ToInfinity, KtoK, OneToK };

std::string to_string(ScenarioMode mode);
ScenarioMode scenario_mode_from_string(const std::string& name);

struct ScenarioSpec {
  ScenarioMode mode = ScenarioMode::PointToPoint;
  int d = 1;           // terminal distance along the first lattice axis
  int k = 1;           // party size (KtoK, OneToK)
  int separation = 6;  // pairwise spacing within a party, > 2*r_rp
};

// Resolved terminal placement. normalizer is N(1): the total bond
// multiplicity incident to the smaller party, i.e. the channel count at p=1.
struct Terminals {
  std::vector<int> sources;
  std::vector<int> sinks;  // empty => patch rim (to-infinity)
  int normalizer = 1;
};

// Symmetric placement on the axis through the origin (FIG-style geometry).
// Throws if any terminal is closer than 2 lattice spacings to the rim.
Terminals place_terminals(const LatticeGraph& graph, const ScenarioSpec& scenario);

struct EqcEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  long trials = 0;
  int normalizer = 1;
  double raw_mean_channels = 0.0;
};

struct ClusterStats {
  double theta_p = 0.0;
  double std_error = 0.0;
};

// Monte Carlo core: averages max_channels over percolation trials and
// normalizes by `terminals.normalizer`. `per_edge_p` overrides the uniform
// conversion probability when nonempty. `copies` > 1 sums the flow of that
// many independent realizations per trial (bond-separated strategies).
// Results are bit-identical for any thread count: per-trial values are
// stored by trial index and reduced in a fixed order.
EqcEstimate mc_channels(const LatticeGraph& graph, const Terminals& terminals,
                        double p, std::span<const double> per_edge_p, long trials,
                        std::uint64_t master_seed, int threads = 1, int copies = 1);

EqcEstimate estimate_eqc(const LatticeGraph& graph, const ScenarioSpec& scenario,
                         double p, long trials, std::uint64_t master_seed,
                         int threads = 1);

struct CurvePoint {
  double x = 0.0;
  EqcEstimate est;
};

// One estimate per distance, independent trial streams per point.
std::vector<CurvePoint> eqc_curve_vs_distance(const LatticeGraph& graph,
                                              ScenarioMode mode, double p,
                                              std::span<const int> d_values,
                                              long trials, std::uint64_t master_seed,
                                              int threads = 1);

std::vector<CurvePoint> eqc_curve_vs_p(const LatticeGraph& graph,
                                       const ScenarioSpec& scenario,
                                       std::span<const double> p_values, long trials,
                                       std::uint64_t master_seed, int threads = 1);

// Largest-open-cluster node fraction (classical percolation order parameter).
ClusterStats estimate_theta(const LatticeGraph& graph, double p, long trials,
                            std::uint64_t master_seed, int threads = 1);

}  // namespace eqc
