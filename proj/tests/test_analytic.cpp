#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "eqc/analytic.hpp"

using namespace eqc;

namespace {

// Independent oracle: direct double sum with Pascal-triangle binomials.
double pairing_expectation_naive(int bk, double p) {
  std::vector<std::vector<double>> C(bk + 1, std::vector<double>(bk + 1, 0.0));
  for (int n = 0; n <= bk; ++n) {
    C[n][0] = 1.0;
    for (int r = 1; r <= n; ++r)
      C[n][r] = C[n - 1][r - 1] + (r <= n - 1 ? C[n - 1][r] : 0.0);
  }
  double acc = 0.0;
  for (int i = 1; i <= bk; ++i)
    for (int j = 1; j <= bk; ++j)
      acc += std::min(i, j) * C[bk][i] * C[bk][j] * std::pow(p, i + j) *
             std::pow(1 - p, 2 * bk - i - j);
  return acc;
}

}  // namespace

TEST_CASE("pairing expectation matches the direct double sum") {
  for (int bk : {3, 4, 6, 8, 12, 24})
    for (double p : {0.05, 0.3, 0.58, 0.75, 0.95}) {
      CHECK(pairing_expectation(bk, p) ==
            doctest::Approx(pairing_expectation_naive(bk, p)).epsilon(1e-10));
    }
}

TEST_CASE("pairing expectation endpoints") {
  CHECK(pairing_expectation(4, 0.0) == doctest::Approx(0.0));
  CHECK(pairing_expectation(4, 1.0) == doctest::Approx(4.0));
  CHECK(pairing_expectation(6, 1.0) == doctest::Approx(6.0));
}

TEST_CASE("k scales the effective bond count") {
  CHECK(pairing_expectation(4, 0.6, 2) == doctest::Approx(pairing_expectation(8, 0.6)));
  CHECK(pairing_expectation(3, 0.7, 4) == doctest::Approx(pairing_expectation(12, 0.7)));
}

TEST_CASE("normalized triangle pairing at the joint-conversion threshold") {
  const double p_star = 2.0 - std::sqrt(2.0);
  CHECK(pairing_expectation(6, p_star) / 6.0 == doctest::Approx(0.47).epsilon(0.011));
}

TEST_CASE("EX(p) <= bk p everywhere") {
  for (int bk : {3, 4, 6})
    for (int i = 1; i <= 50; ++i) {
      const double p = i / 50.0;
      CHECK(pairing_expectation(bk, p) <= bk * p + 1e-12);
    }
}

TEST_CASE("normalized expectation grows with party size k") {
  for (double p : {0.5, 0.7, 0.9}) {
    double prev = 0.0;
    for (int k = 1; k <= 4; ++k) {
      const double v = pairing_expectation(4, p, k) / (4.0 * k);
      CHECK(v > prev);
      prev = v;
    }
  }
}

TEST_CASE("closed-form endpoint values quoted downstream") {
  // Frozen against the working range of the square-lattice point-to-point fit.
  CHECK(analytic_e0(square_index(), 0.6) == doctest::Approx(0.3928).epsilon(2e-3));
  CHECK(analytic_e0(square_index(), 0.7) == doctest::Approx(0.5369).epsilon(2e-3));
  CHECK(analytic_e0(square_index(), 1.0) == doctest::Approx(1.0));
  CHECK(analytic_e0(triangle_index(), 1.0) == doctest::Approx(1.0));
  CHECK(analytic_e0(hexagon_index(), 1.0) == doctest::Approx(1.0));
}

TEST_CASE("medium index fit recovers a known alpha") {
  for (double alpha_true : {0.9, 2.6, 2.8}) {
    const LatticeIndex idx{4, 3, alpha_true};
    std::vector<std::pair<double, double>> curve;
    for (double p = 0.6; p <= 0.951; p += 0.05)
      curve.emplace_back(p, analytic_e0(idx, p));
    const double alpha_fit = fit_alpha(4, 3, curve);
    CHECK(alpha_fit == doctest::Approx(alpha_true).epsilon(1e-4));
  }
}

TEST_CASE("fit_alpha rejects degenerate curves") {
  std::vector<std::pair<double, double>> two{{0.6, 0.4}, {0.7, 0.5}};
  CHECK_THROWS_AS(fit_alpha(4, 3, two), std::invalid_argument);
  std::vector<std::pair<double, double>> flat{{0.6, 0.4}, {0.6, 0.41}, {0.6, 0.42}};
  CHECK_THROWS_AS(fit_alpha(4, 3, flat), std::invalid_argument);
}

TEST_CASE("extrapolation flag marks the sub-0.6 regime") {
  CHECK(analytic_extrapolated(0.5));
  CHECK(!analytic_extrapolated(0.65));
}

TEST_CASE("pairing expectation validates its arguments") {
  CHECK_THROWS_AS(pairing_expectation(0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(pairing_expectation(4, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(pairing_expectation(4, 1.1), std::invalid_argument);
  CHECK_THROWS_AS(pairing_expectation(40, 0.5, 2), std::invalid_argument);  // bk > 64
}
