#include "sdfem/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "sdfem/error.hpp"

namespace sdfem {

Rule1D gauss_legendre(int n, double a, double b) {
  if (n < 1) throw ConfigError("quadrature: need at least one point");
  Rule1D rule;
  rule.points.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  // Newton iteration on P_n from the Chebyshev-like initial guess; roots are
  // symmetric so only half of them are computed.
  for (int k = 0; k < (n + 1) / 2; ++k) {
    double t = std::cos(std::numbers::pi * (k + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = t;
      for (int m = 2; m <= n; ++m) {
        const double p2 = ((2.0 * m - 1.0) * t * p1 - (m - 1.0) * p0) / m;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (t * p1 - p0) / (t * t - 1.0);
      const double dt = p1 / dp;
      t -= dt;
      if (std::fabs(dt) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - t * t) * dp * dp);
    const auto lo = static_cast<std::size_t>(k);
    const auto hi = static_cast<std::size_t>(n - 1 - k);
    rule.points[lo] = mid - half * t;
    rule.points[hi] = mid + half * t;
    rule.weights[lo] = half * w;
    rule.weights[hi] = half * w;
  }
  if (n % 2 == 1) rule.points[static_cast<std::size_t>(n / 2)] = mid;
  return rule;
}

Rule1D graded_gauss(int n, double a, double b, double finest, bool toward_b) {
  const double length = b - a;
  if (!(finest > 0.0) || finest >= 0.5 * length) return gauss_legendre(n, a, b);

  // Breakpoints measured from the graded end: length/2, length/4, ... > finest.
  std::vector<double> dist{length};
  while (dist.back() * 0.5 > finest) dist.push_back(dist.back() * 0.5);
  dist.push_back(0.0);

  Rule1D rule;
  for (std::size_t k = 0; k + 1 < dist.size(); ++k) {
    double lo, hi;
    if (toward_b) {
      lo = b - dist[k];
      hi = b - dist[k + 1];
    } else {
      lo = a + dist[k + 1];
      hi = a + dist[k];
    }
    const Rule1D piece = gauss_legendre(n, lo, hi);
    rule.points.insert(rule.points.end(), piece.points.begin(), piece.points.end());
    rule.weights.insert(rule.weights.end(), piece.weights.begin(), piece.weights.end());
  }
  return rule;
}

void QuadratureRule::validate() const {
  if (order < 2) {
    throw ConfigError("quadrature: order " + std::to_string(order) +
                      " < 2 cannot integrate products of bilinear functions");
  }
  if (order > 64) throw ConfigError("quadrature: order above 64 is not supported");
}

CellQuadrature::CellQuadrature(const ShishkinMesh& mesh, QuadratureRule rule) : rule_(rule) {
  rule_.validate();
  const int n = mesh.n();
  const auto& p = mesh.params();
  columns_.reserve(static_cast<std::size_t>(n));
  rows_.reserve(static_cast<std::size_t>(n));

  for (int i = 1; i <= n; ++i) {
    const double a = mesh.x(i - 1), b = mesh.x(i);
    if (rule_.graded && !p.saturated_x && i == n / 2) {
      columns_.push_back(graded_gauss(rule_.order, a, b, mesh.fine_hx(), true));
    } else {
      columns_.push_back(gauss_legendre(rule_.order, a, b));
    }
  }
  for (int j = 1; j <= n; ++j) {
    const double a = mesh.y(j - 1), b = mesh.y(j);
    if (rule_.graded && !p.saturated_y && j == n / 3 + 1) {
      rows_.push_back(graded_gauss(rule_.order, a, b, mesh.fine_hy(), false));
    } else if (rule_.graded && !p.saturated_y && j == 2 * n / 3) {
      rows_.push_back(graded_gauss(rule_.order, a, b, mesh.fine_hy(), true));
    } else {
      rows_.push_back(gauss_legendre(rule_.order, a, b));
    }
  }
}

}  // namespace sdfem
