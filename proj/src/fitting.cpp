#include "eqc/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

#include "json.hpp"

namespace eqc {

double fit_radius(double gamma) {
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
  return 1.0 / gamma + 0.5;
}

namespace {

struct Params {
  double e0, c0, gamma;
};

double cost_of(const Params& q, std::span<const FitPoint> pts,
               std::span<const double> w) {
  double s = 0.0;
  for (size_t i = 0; i < pts.size(); ++i) {
    const double r = q.e0 + q.c0 * std::exp(-q.gamma * pts[i].d) - pts[i].mean;
    s += w[i] * r * r;
  }
  return s;
}

// Solve the 3x3 system (JtJ + lambda diag(JtJ)) step = Jtr.
bool solve3(double a[3][3], const double b[3], double x[3]) {
  double m[3][4];
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) m[i][j] = a[i][j];
    m[i][3] = b[i];
  }
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int r = col + 1; r < 3; ++r) {
      if (std::fabs(m[r][col]) > std::fabs(m[piv][col])) piv = r;
    }
    if (std::fabs(m[piv][col]) < 1e-300) return false;
    std::swap(m[piv], m[col]);
    for (int r = 0; r < 3; ++r) {
      if (r == col) continue;
      const double f = m[r][col] / m[col][col];
      for (int c = col; c < 4; ++c) m[r][c] -= f * m[col][c];
    }
  }
  for (int i = 0; i < 3; ++i) x[i] = m[i][3] / m[i][i];
  return true;
}

}  // namespace

FitResult fit_exponential(std::span<const FitPoint> curve) {
  std::set<double> distinct;
  for (const auto& pt : curve) distinct.insert(pt.d);
  if (distinct.size() < 4) {
    throw std::invalid_argument("fit requires at least 4 distinct distances");
  }
  for (const auto& pt : curve) {
    if (!std::isfinite(pt.mean) || !std::isfinite(pt.std_error)) {
      throw std::invalid_argument("non-finite curve point");
    }
  }
  std::vector<FitPoint> pts(curve.begin(), curve.end());
  std::sort(pts.begin(), pts.end(),
            [](const FitPoint& a, const FitPoint& b) { return a.d < b.d; });

  std::vector<double> w(pts.size());
  for (size_t i = 0; i < pts.size(); ++i) {
    const double sigma = std::max(pts[i].std_error, 1e-9);
    w[i] = 1.0 / (sigma * sigma);
  }

  Params q{pts.back().mean, pts.front().mean - pts.back().mean, 1.0};
  double cost = cost_of(q, pts, w);
  double lambda = 1e-3;
  bool converged = false;
  double window_cost = cost;  // plateau detector for flat-curve valleys where
                              // c0 and gamma drift jointly at constant cost
  for (int it = 0; it < 200 && !converged; ++it) {
    if (it > 0 && it % 10 == 0) {
      if ((window_cost - cost) / std::max(cost, 1e-300) < 1e-6) converged = true;
      window_cost = cost;
    }
    double jtj[3][3] = {};
    double jtr[3] = {};
    for (size_t i = 0; i < pts.size(); ++i) {
      const double e = std::exp(-q.gamma * pts[i].d);
      const double r = q.e0 + q.c0 * e - pts[i].mean;
      const double jac[3] = {1.0, e, -q.c0 * pts[i].d * e};
      for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) jtj[a][b] += w[i] * jac[a] * jac[b];
        jtr[a] += w[i] * jac[a] * r;
      }
    }
    bool stepped = false;
    for (int damp = 0; damp < 30; ++damp) {
      double m[3][3];
      for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) m[a][b] = jtj[a][b];
        m[a][a] += lambda * std::max(jtj[a][a], 1e-12);
      }
      double step[3];
      const double rhs[3] = {-jtr[0], -jtr[1], -jtr[2]};
      if (!solve3(m, rhs, step)) {
        lambda *= 10.0;
        continue;
      }
      Params trial{q.e0 + step[0], q.c0 + step[1], q.gamma + step[2]};
      if (trial.gamma <= 0.0) trial.gamma = q.gamma * 0.5;
      const double trial_cost = cost_of(trial, pts, w);
      if (trial_cost <= cost) {
        const double rel = (cost - trial_cost) / std::max(cost, 1e-300);
        const double step_norm = std::fabs(step[0]) + std::fabs(step[1]) +
                                 std::fabs(step[2]);
        q = trial;
        cost = trial_cost;
        lambda = std::max(lambda / 3.0, 1e-12);
        stepped = true;
        if (rel < 1e-10 || step_norm < 1e-12) converged = true;
        break;
      }
      lambda *= 10.0;
    }
    if (!stepped) converged = true;  // local minimum: no improving step exists
  }
  if (!std::isfinite(cost)) throw std::runtime_error("exponential fit diverged");
  if (!converged) {
    throw std::runtime_error("exponential fit did not converge in 200 iterations");
  }

  FitResult fit;
  fit.e0 = q.e0;
  fit.c0 = q.c0;
  fit.gamma = q.gamma;
  fit.radius = fit_radius(q.gamma);
  double ss = 0.0;
  for (const auto& pt : pts) {
    const double r = q.e0 + q.c0 * std::exp(-q.gamma * pt.d) - pt.mean;
    ss += r * r;
  }
  fit.residual_rms = std::sqrt(ss / pts.size());
  const double drop = pts[0].mean - pts[1].mean;
  const double noise = 2.0 * std::sqrt(pts[0].std_error * pts[0].std_error +
                                       pts[1].std_error * pts[1].std_error);
  fit.gamma_lower_bounded = std::fabs(drop) <= noise;
  return fit;
}

std::vector<FitPoint> relative_curve(std::span<const FitPoint> curve, double anchor_d) {
  const FitPoint* anchor = nullptr;
  for (const auto& pt : curve) {
    if (pt.d == anchor_d) anchor = &pt;
  }
  if (anchor == nullptr) throw std::invalid_argument("anchor distance not in curve");
  if (anchor->mean == 0.0) throw std::invalid_argument("anchor mean is zero");
  std::vector<FitPoint> out(curve.begin(), curve.end());
  for (auto& pt : out) {
    pt.mean /= anchor->mean;
    pt.std_error /= std::fabs(anchor->mean);
  }
  return out;
}

std::string fit_report_json(const FitResult& fit) {
  nlohmann::json j;
  j["E0"] = fit.e0;
  j["C0"] = fit.c0;
  j["gamma"] = fit.gamma;
  j["radius"] = fit.radius;
  j["residual_rms"] = fit.residual_rms;
  j["flags"] = nlohmann::json::array();
  if (fit.gamma_lower_bounded) j["flags"].push_back("gamma_lower_bounded");
  return j.dump(2);
}

}  // namespace eqc
