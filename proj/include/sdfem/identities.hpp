#pragma once

#include <limits>
#include <string_view>

#include "sdfem/field.hpp"
#include "sdfem/mesh.hpp"
#include "sdfem/problem.hpp"

namespace sdfem {

/// Rectangle tau with the moment weights
///   F(x) = ((x - x_tau)^2 - h_x^2 / 4) / 2,  J(y) = ((y - y_tau)^2 - h_y^2 / 4) / 2.
/// Edge l2 is the right edge x = x1 and l4 the left edge x = x0.
struct CellGeometry {
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;

  static CellGeometry of(const ShishkinMesh& mesh, CellIndex c);
  /// Throws DomainError for an empty or inverted rectangle.
  void validate() const;

  double xc() const { return 0.5 * (x0 + x1); }
  double yc() const { return 0.5 * (y0 + y1); }
  double hx() const { return x1 - x0; }
  double hy() const { return y1 - y0; }
  double F(double x) const { return 0.5 * ((x - xc()) * (x - xc()) - 0.25 * hx() * hx()); }
  double J(double y) const { return 0.5 * ((y - yc()) * (y - yc()) - 0.25 * hy() * hy()); }
};

/// w = a0 + ax (x - x_tau) + ay (y - y_tau) + axy (x - x_tau)(y - y_tau).
struct BilinearOnCell {
  double a0 = 0, ax = 0, ay = 0, axy = 0;

  /// From the values at (x0,y0), (x1,y0), (x0,y1), (x1,y1).
  static BilinearOnCell from_corners(const CellGeometry& g, double w00, double w10, double w01, double w11);

  Jet eval(const CellGeometry& g, double x, double y) const;
  double dxy() const { return axy; }
  bool is_zero() const { return a0 == 0 && ax == 0 && ay == 0 && axy == 0; }
};

enum class LinIdentity { A, B, C };
/// Sign of the edge term of identity (c): the standard pairing integrates
/// over the right edge minus the left edge.
enum class EdgeConvention { RightMinusLeft, LeftMinusRight };

std::string_view to_string(LinIdentity id);

struct IdentitySides {
  double lhs = 0.0;
  double rhs = 0.0;
  /// The same quadratures applied to the absolute integrands; the rounding
  /// floor of either side is a few ulp of this.
  double magnitude = 0.0;
  double residual() const;
  /// residual / max(|lhs|, |rhs|); 0 when both sides vanish.
  double relative() const;
  /// residual / magnitude; 0 when the magnitude vanishes.
  double conditioned() const;
};

/// Both sides of one identity on one cell, each by tensor Gauss quadrature of
/// the given order (edge integrals by 1-D Gauss of the same order).
///  (a) int (g - g^I)_x w_x = int g_xyy J (w_x - 2/3 (y - y_tau) w_xy)
///  (b) int (g - g^I)_y w_y = int g_xxy F (w_y - 2/3 (x - x_tau) w_xy)
///  (c) int (g - g^I)_x w   = int R(g, w) + h_x^2/12 (int_l2 - int_l4) g_xx w dy
IdentitySides lin_identity_sides(const CellGeometry& cell, const SmoothField& g, const BilinearOnCell& w,
                                 LinIdentity which, int quad_order,
                                 EdgeConvention edges = EdgeConvention::RightMinusLeft);

double lin_identity_residual(const CellGeometry& cell, const SmoothField& g, const BilinearOnCell& w,
                             LinIdentity which, int quad_order,
                             EdgeConvention edges = EdgeConvention::RightMinusLeft);

/// Same with a general test function; throws ConfigError unless w is
/// bilinear on the cell (checked at interior sample points).
double lin_identity_residual(const CellGeometry& cell, const SmoothField& g, const SmoothField& w,
                             LinIdentity which, int quad_order,
                             EdgeConvention edges = EdgeConvention::RightMinusLeft);

enum class InverseEstimate {
  DxLp,       // ||chi_x||_p h_x / ||chi||_p
  DyLp,       // ||chi_y||_p h_y / ||chi||_p
  EdgeTrace,  // int |chi(x_i, y)| dy h_x / ||chi||_{L1}
  LqLp,       // ||chi||_q / ((h_x h_y)^{1/q - 1/p} ||chi||_p)
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Lp norm of a bilinear function on the cell for p in {1, 2, inf}; exact up
/// to rounding (L1 splits the cell at the sign changes).
double bilinear_lp_norm(const CellGeometry& cell, const BilinearOnCell& chi, double p);

/// Measured ratio of one inverse estimate. p, q in {1, 2, inf}; q is used by
/// LqLp only. Throws ConfigError when the denominator norm vanishes.
double inverse_estimate_ratio(const CellGeometry& cell, const BilinearOnCell& chi, InverseEstimate which, double p,
                              double q = 1.0);

}  // namespace sdfem
