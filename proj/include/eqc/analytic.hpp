#pragma once

#include <span>
#include <utility>

namespace eqc {

// Closed-form lattice parameters: b internal bonds per terminal circle,
// m peripheral escape count, alpha the fitted medium index.
struct LatticeIndex {
  int b = 4;
  int m = 3;
  double alpha = 0.0;
};

inline LatticeIndex square_index(double alpha = 2.6) { return {4, 3, alpha}; }
inline LatticeIndex triangle_index(double alpha = 0.9) { return {6, 5, alpha}; }
inline LatticeIndex hexagon_index(double alpha = 2.8) { return {3, 2, alpha}; }

// E X(p) = sum_{1<=i,j<=bk} min{i,j} C(bk,i) C(bk,j) p^{i+j} (1-p)^{2bk-i-j}.
// Log-space binomial terms with compensated summation; stable up to bk = 64.
double pairing_expectation(int b, double p, int k = 1);

// E0 = EX(p)/(bk) * (1 - (1-p)^m)^alpha.
double analytic_e0(const LatticeIndex& index, double p, int k = 1);

// The closed form is only advertised above the square-lattice working range
// p > 0.6; outside it the value is an extrapolation.
bool analytic_extrapolated(double p);

// Least-squares medium index over (p, E0_mc) points. Requires >= 3 points
// with distinct p; throws on a degenerate (single-p) curve.
double fit_alpha(int b, int m, std::span<const std::pair<double, double>> curve,
                 int k = 1);

}  // namespace eqc
