#pragma once

#include <vector>

#include "sdfem/mesh.hpp"

namespace sdfem {

/// Points and weights of a one-dimensional rule.
struct Rule1D {
  std::vector<double> points;
  std::vector<double> weights;
  std::size_t size() const { return points.size(); }
};

/// n-point Gauss-Legendre rule on [a, b]; exact for degree <= 2n - 1.
Rule1D gauss_legendre(int n, double a = 0.0, double b = 1.0);

/// Composite rule on [a, b] whose subintervals halve toward `toward_b ? b : a`
/// until they are no wider than `finest`; each piece gets an n-point rule.
Rule1D graded_gauss(int n, double a, double b, double finest, bool toward_b);

struct QuadratureRule {
  int order = 3;        // Gauss points per direction and subinterval
  bool graded = true;   // grade coarse cells that border a transition line

  /// Throws ConfigError for order < 2 (bilinear products need two points).
  void validate() const;
};

/// Per-column and per-row rules for a mesh. With grading enabled, the last
/// coarse column before x = 1 - lambda_x and the coarse rows next to
/// y = lambda_y and y = 1 - lambda_y are refined geometrically toward the
/// transition line down to the fine mesh size, so that exponential layer
/// terms of width eps (resp. sqrt eps) are integrated on cells of width
/// O(1/N). Everywhere else the plain tensor Gauss rule is used.
class CellQuadrature {
 public:
  CellQuadrature(const ShishkinMesh& mesh, QuadratureRule rule);

  const Rule1D& column(int i) const { return columns_[static_cast<std::size_t>(i - 1)]; }
  const Rule1D& row(int j) const { return rows_[static_cast<std::size_t>(j - 1)]; }
  const QuadratureRule& rule() const { return rule_; }

  std::size_t points_in(CellIndex c) const { return column(c.i).size() * row(c.j).size(); }

 private:
  QuadratureRule rule_;
  std::vector<Rule1D> columns_, rows_;
};

}  // namespace sdfem
