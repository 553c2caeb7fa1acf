#include "eqc/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "eqc/flow.hpp"
#include "eqc/percolation.hpp"
#include "eqc/philox.hpp"

namespace eqc {

std::string to_string(ScenarioMode mode) {
  switch (mode) {
    case ScenarioMode::PointToPoint: return "p2p";
    case ScenarioMode::ToInfinity: return "toinf";
    case ScenarioMode::KtoK: return "ktok";
    case ScenarioMode::OneToK: return "onetok";
  }
  throw std::logic_error("unknown ScenarioMode");
}

ScenarioMode scenario_mode_from_string(const std::string& name) {
  if (name == "p2p") return ScenarioMode::PointToPoint;
  if (name == "toinf") return ScenarioMode::ToInfinity;
  if (name == "ktok") return ScenarioMode::KtoK;
  if (name == "onetok") return ScenarioMode::OneToK;
  throw std::invalid_argument("unknown scenario mode: " + name);
}

namespace {

int guarded_node(const LatticeGraph& g, int a, int b) {
  const int id = node_at(g, a, b);
  if (!g.has_interior_margin(id)) {
    throw std::invalid_argument("terminal too close to the patch rim (margin < 2)");
  }
  return id;
}

int party_multiplicity(const LatticeGraph& g, const std::vector<int>& party) {
  int total = 0;
  for (int v : party) total += g.incident_multiplicity(v);
  return total;
}

}  // namespace

Terminals place_terminals(const LatticeGraph& graph, const ScenarioSpec& sc) {
  if (sc.d < 1) throw std::invalid_argument("d must be >= 1");
  if (sc.k < 1) throw std::invalid_argument("k must be >= 1");
  Terminals t;
  switch (sc.mode) {
    case ScenarioMode::PointToPoint: {
      const int a = -(sc.d / 2);
      t.sources = {guarded_node(graph, a, 0)};
      t.sinks = {guarded_node(graph, a + sc.d, 0)};
      t.normalizer = party_multiplicity(graph, t.sources);
      break;
    }
    case ScenarioMode::ToInfinity: {
      const int a = -(sc.d / 2);
      t.sources = {guarded_node(graph, a, 0), guarded_node(graph, a + sc.d, 0)};
      t.normalizer = party_multiplicity(graph, t.sources);
      break;
    }
    case ScenarioMode::KtoK: {
      const int dx = std::max(sc.d, 6);
      const int xa = -(dx / 2);
      for (int j = 0; j < sc.k; ++j) {
        const int y = j * sc.separation - ((sc.k - 1) * sc.separation) / 2;
        t.sources.push_back(guarded_node(graph, xa, y));
        t.sinks.push_back(guarded_node(graph, xa + dx, y));
      }
      t.normalizer = party_multiplicity(graph, t.sources);
      break;
    }
    case ScenarioMode::OneToK: {
      const int dx = std::max(sc.d, 12);
      const int xa = -(dx / 2);
      t.sources = {guarded_node(graph, xa, 0)};
      for (int j = 0; j < sc.k; ++j) {
        const int y = j * sc.separation - ((sc.k - 1) * sc.separation) / 2;
        t.sinks.push_back(guarded_node(graph, xa + dx, y));
      }
      t.normalizer = party_multiplicity(graph, t.sources);
      break;
    }
  }
  return t;
}

EqcEstimate mc_channels(const LatticeGraph& graph, const Terminals& terminals,
                        double p, std::span<const double> per_edge_p, long trials,
                        std::uint64_t master_seed, int threads, int copies) {
  if (per_edge_p.empty() && !(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("p must lie in [0,1]");
  }
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  const std::vector<int> sinks =
      terminals.sinks.empty() ? boundary_nodes(graph) : terminals.sinks;

  std::vector<double> values(static_cast<size_t>(trials));
  auto worker = [&](long lo, long hi) {
    MaxFlowSolver solver(graph, terminals.sources, sinks);
    std::vector<int> caps;
    PercolationParams params;
    params.p = p;
    params.master_seed = master_seed;
    for (long t = lo; t < hi; ++t) {
      long raw = 0;
      for (int c = 0; c < copies; ++c) {
        params.trial_index = static_cast<std::uint64_t>(t) * copies + c;
        sample_into(graph, params, per_edge_p, caps);
        raw += solver.solve(caps);
      }
      values[t] = static_cast<double>(raw) / terminals.normalizer;
    }
  };

  const int nthreads = std::max(1, threads);
  if (nthreads == 1 || trials < 2 * nthreads) {
    worker(0, trials);
  } else {
    std::vector<std::thread> pool;
    const long chunk = (trials + nthreads - 1) / nthreads;
    for (int i = 0; i < nthreads; ++i) {
      const long lo = i * chunk;
      const long hi = std::min(trials, lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back(worker, lo, hi);
    }
    for (auto& th : pool) th.join();
  }

  // Fixed-order reduction: identical results for any thread count.
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / trials;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double stderr_ = trials > 1 ? std::sqrt(ss / (trials - 1) / trials) : 0.0;

  EqcEstimate est;
  est.mean = mean;
  est.std_error = stderr_;
  est.trials = trials;
  est.normalizer = terminals.normalizer;
  est.raw_mean_channels = mean * terminals.normalizer;
  return est;
}

EqcEstimate estimate_eqc(const LatticeGraph& graph, const ScenarioSpec& scenario,
                         double p, long trials, std::uint64_t master_seed,
                         int threads) {
  const Terminals t = place_terminals(graph, scenario);
  return mc_channels(graph, t, p, {}, trials, master_seed, threads);
}

std::vector<CurvePoint> eqc_curve_vs_distance(const LatticeGraph& graph,
                                              ScenarioMode mode, double p,
                                              std::span<const int> d_values,
                                              long trials, std::uint64_t master_seed,
                                              int threads) {
  std::vector<CurvePoint> curve;
  curve.reserve(d_values.size());
  ScenarioSpec sc;
  sc.mode = mode;
  for (size_t i = 0; i < d_values.size(); ++i) {
    sc.d = d_values[i];
    const std::uint64_t seed = derive_seed(master_seed, i);
    curve.push_back({static_cast<double>(sc.d),
                     estimate_eqc(graph, sc, p, trials, seed, threads)});
  }
  return curve;
}

std::vector<CurvePoint> eqc_curve_vs_p(const LatticeGraph& graph,
                                       const ScenarioSpec& scenario,
                                       std::span<const double> p_values, long trials,
                                       std::uint64_t master_seed, int threads) {
  // Common random numbers across p: the same trial uniforms serve every p,
  // so the sampled curve is exactly monotone where the model is.
  std::vector<CurvePoint> curve;
  curve.reserve(p_values.size());
  for (double p : p_values) {
    curve.push_back({p, estimate_eqc(graph, scenario, p, trials, master_seed, threads)});
  }
  return curve;
}

namespace {

struct UnionFind {
  std::vector<int> parent, size;
  void reset(int n) {
    parent.resize(n);
    std::iota(parent.begin(), parent.end(), 0);
    size.assign(n, 1);
  }
  int find(int v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size[a] < size[b]) std::swap(a, b);
    parent[b] = a;
    size[a] += size[b];
  }
};

}  // namespace

ClusterStats estimate_theta(const LatticeGraph& graph, double p, long trials,
                            std::uint64_t master_seed, int threads) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0,1]");
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  const int n = graph.node_count();
  std::vector<double> values(static_cast<size_t>(trials));

  auto worker = [&](long lo, long hi) {
    UnionFind uf;
    std::vector<int> caps;
    PercolationParams params{p, master_seed, 0};
    for (long t = lo; t < hi; ++t) {
      params.trial_index = static_cast<std::uint64_t>(t);
      sample_into(graph, params, {}, caps);
      uf.reset(n);
      for (const auto& e : graph.edges) {
        if (caps[e.id] > 0) uf.unite(e.u, e.v);
      }
      int largest = 1;
      for (int v = 0; v < n; ++v) {
        if (uf.find(v) == v) largest = std::max(largest, uf.size[v]);
      }
      values[t] = static_cast<double>(largest) / n;
    }
  };

  const int nthreads = std::max(1, threads);
  if (nthreads == 1 || trials < 2 * nthreads) {
    worker(0, trials);
  } else {
    std::vector<std::thread> pool;
    const long chunk = (trials + nthreads - 1) / nthreads;
    for (int i = 0; i < nthreads; ++i) {
      const long lo = i * chunk;
      const long hi = std::min(trials, lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back(worker, lo, hi);
    }
    for (auto& th : pool) th.join();
  }

  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / trials;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  ClusterStats stats;
  stats.theta_p = mean;
  stats.std_error = trials > 1 ? std::sqrt(ss / (trials - 1) / trials) : 0.0;
  return stats;
}

}  // namespace eqc
