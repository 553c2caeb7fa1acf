#include "doctest.h"

#include <cmath>
#include <numeric>

#include "eqc/lattice.hpp"
#include "eqc/percolation.hpp"
#include "eqc/philox.hpp"

using namespace eqc;

TEST_CASE("p=1 opens every copy, p=0 none") {
  const auto g = generate(LatticeKind::HexagonThirdDoubleBond, 2);
  const auto all = sample(g, {1.0, 7, 0});
  const auto none = sample(g, {0.0, 7, 0});
  for (const auto& e : g.edges) {
    CHECK(all.open_capacity[e.id] == e.mult);
    CHECK(none.open_capacity[e.id] == 0);
  }
}

TEST_CASE("sampling is a pure function of (seed, trial)") {
  const auto g = generate(LatticeKind::Square, 3);
  const auto a = sample(g, {0.5, 123, 9});
  const auto b = sample(g, {0.5, 123, 9});
  const auto c = sample(g, {0.5, 123, 10});
  CHECK(a.open_capacity == b.open_capacity);
  CHECK(a.open_capacity != c.open_capacity);
}

TEST_CASE("empirical open fraction matches p within 4 sigma") {
  const auto g = generate(LatticeKind::Square, 4);
  const double p = 0.37;
  const long trials = 400;
  long open = 0, total = 0;
  for (long t = 0; t < trials; ++t) {
    const auto s = sample(g, {p, 2024, static_cast<std::uint64_t>(t)});
    open += std::accumulate(s.open_capacity.begin(), s.open_capacity.end(), 0L);
    total += g.total_copies();
  }
  const double frac = static_cast<double>(open) / static_cast<double>(total);
  const double sigma = std::sqrt(p * (1 - p) / static_cast<double>(total));
  CHECK(std::abs(frac - p) < 4 * sigma);
}

TEST_CASE("coupled realizations are monotone in p") {
  const auto g = generate(LatticeKind::Triangle, 3);
  for (std::uint64_t t = 0; t < 50; ++t) {
    const auto lo = sample(g, {0.4, 99, t});
    const auto hi = sample(g, {0.7, 99, t});
    for (int e = 0; e < g.edge_count(); ++e) CHECK(lo.open_capacity[e] <= hi.open_capacity[e]);
  }
}

TEST_CASE("per-edge probabilities override the uniform p") {
  const auto g = generate(LatticeKind::Square, 2);
  std::vector<double> pe(g.edge_count(), 0.0);
  pe[3] = 1.0;
  pe[7] = 1.0;
  const auto s = sample(g, {0.5, 11, 0}, pe);
  for (int e = 0; e < g.edge_count(); ++e)
    CHECK(s.open_capacity[e] == ((e == 3 || e == 7) ? 1 : 0));
}

TEST_CASE("enumerate_all weights sum to 1 and reproduce the mean open count") {
  const auto g = generate(LatticeKind::Square, 1);  // 12 copies
  const double p = 0.3;
  double wsum = 0.0, mean_open = 0.0;
  enumerate_all(g, p, [&](const PercolationSample& s, double w) {
    wsum += w;
    mean_open += w * std::accumulate(s.open_capacity.begin(), s.open_capacity.end(), 0);
  });
  CHECK(wsum == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(mean_open == doctest::Approx(p * g.total_copies()).epsilon(1e-10));
}

TEST_CASE("enumerate_all refuses oversized instances") {
  const auto g = generate(LatticeKind::Square, 3);
  CHECK_THROWS_AS(enumerate_all(g, 0.5, [](const PercolationSample&, double) {}),
                  std::invalid_argument);
}

TEST_CASE("derived seeds give distinct streams") {
  CHECK(derive_seed(42, 0) != derive_seed(42, 1));
  CHECK(derive_seed(42, 0) != derive_seed(43, 0));
  CHECK(derive_seed(42, 5) == derive_seed(42, 5));
}

TEST_CASE("philox counter outputs look uniform on a coarse histogram") {
  int bins[8] = {0};
  const int n = 8000;
  for (int i = 0; i < n; ++i) {
    const double u = bond_uniform(7, i, 0, 0);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    bins[static_cast<int>(u * 8)] += 1;
  }
  for (int b = 0; b < 8; ++b) CHECK(std::abs(bins[b] - n / 8) < 5 * std::sqrt(n / 8.0));
}
