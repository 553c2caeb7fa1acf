#include "eqc/analytic.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace eqc {

namespace {

double log_binomial(int n, int r) {
  return std::lgamma(n + 1.0) - std::lgamma(r + 1.0) - std::lgamma(n - r + 1.0);
}

}  // namespace

double pairing_expectation(int b, double p, int k) {
  if (b < 1 || k < 1) throw std::invalid_argument("b and k must be >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0,1]");
  const int n = b * k;
  if (n > 64) throw std::invalid_argument("bk exceeds the supported range (64)");
  if (p == 0.0) return 0.0;
  if (p == 1.0) return static_cast<double>(n);

  const double lp = std::log(p);
  const double lq = std::log1p(-p);
  // Kahan-compensated sum of min{i,j} * C(n,i)C(n,j) p^{i+j} q^{2n-i-j}.
  double sum = 0.0, comp = 0.0;
  for (int i = 1; i <= n; ++i) {
    const double li = log_binomial(n, i) + i * lp + (n - i) * lq;
    for (int j = 1; j <= n; ++j) {
      const double lj = log_binomial(n, j) + j * lp + (n - j) * lq;
      const double term = std::min(i, j) * std::exp(li + lj);
      const double y = term - comp;
      const double t = sum + y;
      comp = (t - sum) - y;
      sum = t;
    }
  }
  return sum;
}

double analytic_e0(const LatticeIndex& index, double p, int k) {
  if (index.m < 1) throw std::invalid_argument("m must be >= 1");
  if (index.alpha < 0.0) throw std::invalid_argument("alpha must be >= 0");
  const double ex = pairing_expectation(index.b, p, k);
  const double escape = 1.0 - std::pow(1.0 - p, index.m);
  return ex / (static_cast<double>(index.b) * k) * std::pow(escape, index.alpha);
}

bool analytic_extrapolated(double p) { return p <= 0.6; }

double fit_alpha(int b, int m, std::span<const std::pair<double, double>> curve,
                 int k) {
  if (curve.size() < 3) throw std::invalid_argument("need at least 3 curve points");
  bool distinct = false;
  for (size_t i = 1; i < curve.size(); ++i) {
    if (curve[i].first != curve[0].first) distinct = true;
  }
  if (!distinct) throw std::invalid_argument("degenerate curve: all p equal");

  // Precompute amplitude A = EX/(bk) and escape base g per point; the model
  // is y = A * g^alpha, cost is convex enough for a golden-section search.
  std::vector<double> amp(curve.size()), base(curve.size());
  for (size_t i = 0; i < curve.size(); ++i) {
    const double p = curve[i].first;
    amp[i] = pairing_expectation(b, p, k) / (static_cast<double>(b) * k);
    base[i] = 1.0 - std::pow(1.0 - p, m);
  }
  auto cost = [&](double alpha) {
    double s = 0.0;
    for (size_t i = 0; i < curve.size(); ++i) {
      const double r = amp[i] * std::pow(base[i], alpha) - curve[i].second;
      s += r * r;
    }
    return s;
  };
  double lo = 0.0, hi = 20.0;
  const double gr = 0.6180339887498949;
  double x1 = hi - gr * (hi - lo);
  double x2 = lo + gr * (hi - lo);
  double f1 = cost(x1), f2 = cost(x2);
  for (int it = 0; it < 200; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = cost(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = cost(x2);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace eqc
