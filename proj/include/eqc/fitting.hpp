#pragma once

#include <span>
#include <string>
#include <vector>

namespace eqc {

struct FitPoint {
  double d = 0.0;
  double mean = 0.0;
  double std_error = 0.0;
};

struct FitResult {
  double e0 = 0.0;
  double c0 = 0.0;      // negative for curves that approach from below
  double gamma = 1.0;   // decay exponent, 1/lattice-spacing
  double radius = 0.0;  // 1/gamma + 1/2
  double residual_rms = 0.0;
  // gamma is only a lower bound: the d=1 -> d=2 drop is within 2 sigma of
  // noise, so the curve is flat and the exponent unidentifiable.
  bool gamma_lower_bounded = false;
};

// Effective-circle radius from the decay exponent.
double fit_radius(double gamma);

// Weighted (1/sigma^2) Levenberg-Marquardt fit of E0 + C0 exp(-gamma d).
// Deterministic: fixed initialization (E0 = last mean, C0 = first - last,
// gamma = 1), fixed damping schedule, 200 iteration cap. Throws on fewer
// than 4 distinct distances or non-convergence.
FitResult fit_exponential(std::span<const FitPoint> curve);

// Normalize so the anchor-distance mean maps to 1 (relative-EQC curves).
std::vector<FitPoint> relative_curve(std::span<const FitPoint> curve, double anchor_d);

// {E0, C0, gamma, radius, residual_rms, flags} JSON report.
std::string fit_report_json(const FitResult& fit);

}  // namespace eqc
