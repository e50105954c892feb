#include "sdfem/identities.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "sdfem/error.hpp"
#include "sdfem/quadrature.hpp"

namespace sdfem {

CellGeometry CellGeometry::of(const ShishkinMesh& mesh, CellIndex c) {
  const CellRect r = mesh.cell(c);
  return {r.x0, r.x1, r.y0, r.y1};
}

void CellGeometry::validate() const {
  if (!(x1 > x0) || !(y1 > y0) || !std::isfinite(x0) || !std::isfinite(x1) || !std::isfinite(y0) ||
      !std::isfinite(y1)) {
    throw DomainError("identities: degenerate cell");
  }
}

BilinearOnCell BilinearOnCell::from_corners(const CellGeometry& g, double w00, double w10, double w01, double w11) {
  BilinearOnCell w;
  w.a0 = 0.25 * (w00 + w10 + w01 + w11);
  w.ax = 0.5 * ((w10 - w00) + (w11 - w01)) / g.hx();
  w.ay = 0.5 * ((w01 - w00) + (w11 - w10)) / g.hy();
  w.axy = ((w11 - w01) - (w10 - w00)) / (g.hx() * g.hy());
  return w;
}

Jet BilinearOnCell::eval(const CellGeometry& g, double x, double y) const {
  const double s = x - g.xc(), t = y - g.yc();
  return {a0 + ax * s + ay * t + axy * s * t, ax + axy * t, ay + axy * s};
}

std::string_view to_string(LinIdentity id) {
  switch (id) {
    case LinIdentity::A: return "a";
    case LinIdentity::B: return "b";
    case LinIdentity::C: return "c";
  }
  return "?";
}

double IdentitySides::residual() const { return std::fabs(lhs - rhs); }

double IdentitySides::relative() const {
  const double scale = std::max(std::fabs(lhs), std::fabs(rhs));
  return scale == 0.0 ? 0.0 : residual() / scale;
}

double IdentitySides::conditioned() const { return magnitude == 0.0 ? 0.0 : residual() / magnitude; }

IdentitySides lin_identity_sides(const CellGeometry& cell, const SmoothField& g, const BilinearOnCell& w,
                                 LinIdentity which, int quad_order, EdgeConvention edges) {
  cell.validate();
  if (quad_order < 1) throw ConfigError("identities: quadrature order must be >= 1");
  if (!g) throw ConfigError("identities: g is not set");

  // Bilinear interpolant of g on the cell.
  const BilinearOnCell gi = BilinearOnCell::from_corners(cell, g(cell.x0, cell.y0, 0, 0), g(cell.x1, cell.y0, 0, 0),
                                                         g(cell.x0, cell.y1, 0, 0), g(cell.x1, cell.y1, 0, 0));
  const Rule1D rx = gauss_legendre(quad_order, cell.x0, cell.x1);
  const Rule1D ry = gauss_legendre(quad_order, cell.y0, cell.y1);
  const double xc = cell.xc(), yc = cell.yc(), hx = cell.hx();

  IdentitySides sides;
  double lhs_abs = 0.0, rhs_abs = 0.0;
  auto add = [&](double wt, double l, double r) {
    sides.lhs += wt * l;
    sides.rhs += wt * r;
    lhs_abs += wt * std::fabs(l);
    rhs_abs += wt * std::fabs(r);
  };
  for (std::size_t b = 0; b < ry.size(); ++b) {
    for (std::size_t a = 0; a < rx.size(); ++a) {
      const double x = rx.points[a], y = ry.points[b];
      const double wt = rx.weights[a] * ry.weights[b];
      const Jet wj = w.eval(cell, x, y);
      const Jet ij = gi.eval(cell, x, y);
      const double s = x - xc, t = y - yc;
      switch (which) {
        case LinIdentity::A:
          add(wt, (g(x, y, 1, 0) - ij.dx) * wj.dx, g(x, y, 1, 2) * cell.J(y) * (wj.dx - 2.0 / 3.0 * t * w.axy));
          break;
        case LinIdentity::B:
          add(wt, (g(x, y, 0, 1) - ij.dy) * wj.dy, g(x, y, 2, 1) * cell.F(x) * (wj.dy - 2.0 / 3.0 * s * w.axy));
          break;
        case LinIdentity::C: {
          const double gxxx = g(x, y, 3, 0);
          const double r = cell.F(x) * s * gxxx * wj.dx / 3.0 - hx * hx / 12.0 * gxxx * wj.v +
                           cell.J(y) * g(x, y, 1, 2) *
                               (wj.v - s * wj.dx - 2.0 / 3.0 * t * wj.dy + 2.0 / 3.0 * s * t * w.axy);
          add(wt, (g(x, y, 1, 0) - ij.dx) * wj.v, r);
          break;
        }
      }
    }
  }
  if (which == LinIdentity::C) {
    double right = 0.0, left = 0.0, both_abs = 0.0;
    for (std::size_t b = 0; b < ry.size(); ++b) {
      const double y = ry.points[b];
      const double r = g(cell.x1, y, 2, 0) * w.eval(cell, cell.x1, y).v;
      const double l = g(cell.x0, y, 2, 0) * w.eval(cell, cell.x0, y).v;
      right += ry.weights[b] * r;
      left += ry.weights[b] * l;
      both_abs += ry.weights[b] * (std::fabs(r) + std::fabs(l));
    }
    const double edge = edges == EdgeConvention::RightMinusLeft ? right - left : left - right;
    sides.rhs += hx * hx / 12.0 * edge;
    rhs_abs += hx * hx / 12.0 * both_abs;
  }
  sides.magnitude = std::max(lhs_abs, rhs_abs);
  return sides;
}

double lin_identity_residual(const CellGeometry& cell, const SmoothField& g, const BilinearOnCell& w,
                             LinIdentity which, int quad_order, EdgeConvention edges) {
  return lin_identity_sides(cell, g, w, which, quad_order, edges).residual();
}

double lin_identity_residual(const CellGeometry& cell, const SmoothField& g, const SmoothField& w,
                             LinIdentity which, int quad_order, EdgeConvention edges) {
  cell.validate();
  if (!w) throw ConfigError("identities: w is not set");
  const BilinearOnCell wb = BilinearOnCell::from_corners(cell, w(cell.x0, cell.y0, 0, 0), w(cell.x1, cell.y0, 0, 0),
                                                         w(cell.x0, cell.y1, 0, 0), w(cell.x1, cell.y1, 0, 0));
  double scale = std::max({std::fabs(wb.a0), std::fabs(wb.ax) * cell.hx(), std::fabs(wb.ay) * cell.hy(),
                           std::fabs(wb.axy) * cell.hx() * cell.hy()});
  if (scale == 0.0) scale = 1.0;
  for (const double fx : {0.2, 0.5, 0.7}) {
    for (const double fy : {0.3, 0.5, 0.9}) {
      const double x = cell.x0 + fx * cell.hx(), y = cell.y0 + fy * cell.hy();
      if (std::fabs(w(x, y, 0, 0) - wb.eval(cell, x, y).v) > 1e-12 * scale) {
        throw ConfigError("identities: test function is not bilinear on the cell");
      }
    }
  }
  return lin_identity_residual(cell, g, wb, which, quad_order, edges);
}

namespace {

bool is_inf(double p) { return std::isinf(p) && p > 0; }

void check_exponent(double p) {
  if (!(p == 1.0 || p == 2.0 || is_inf(p))) throw ConfigError("identities: exponent must be 1, 2 or inf");
}

// int_{-h/2}^{h/2} |A + B s| ds
double abs_linear_integral(double a, double b, double h) {
  const double lo = a - 0.5 * b * h, hi = a + 0.5 * b * h;
  if ((lo >= 0.0 && hi >= 0.0) || (lo <= 0.0 && hi <= 0.0)) return h * std::fabs(a);
  return (lo * lo + hi * hi) / (2.0 * std::fabs(b));
}

double l1_norm(const CellGeometry& c, const BilinearOnCell& chi) {
  // For fixed y, chi is linear in x; its x-integral is smooth in y between the
  // zeros of chi(x0, y), chi(x1, y), A(y) and B(y), all linear in y.
  const double hx = c.hx(), yc = c.yc();
  std::vector<double> cuts{c.y0, c.y1};
  auto add_root = [&](double slope, double value_at_yc) {
    if (slope == 0.0) return;
    const double y = yc - value_at_yc / slope;
    if (y > c.y0 && y < c.y1) cuts.push_back(y);
  };
  add_root(chi.ay - chi.axy * hx / 2, chi.a0 - chi.ax * hx / 2);
  add_root(chi.ay + chi.axy * hx / 2, chi.a0 + chi.ax * hx / 2);
  add_root(chi.ay, chi.a0);
  add_root(chi.axy, chi.ax);
  std::sort(cuts.begin(), cuts.end());

  double total = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    if (!(cuts[k + 1] > cuts[k])) continue;
    const Rule1D r = gauss_legendre(16, cuts[k], cuts[k + 1]);
    for (std::size_t q = 0; q < r.size(); ++q) {
      const double t = r.points[q] - yc;
      total += r.weights[q] * abs_linear_integral(chi.a0 + chi.ay * t, chi.ax + chi.axy * t, hx);
    }
  }
  return total;
}

double l2_norm(const CellGeometry& c, const BilinearOnCell& chi) {
  const Rule1D rx = gauss_legendre(3, c.x0, c.x1);
  const Rule1D ry = gauss_legendre(3, c.y0, c.y1);
  double s = 0.0;
  for (std::size_t b = 0; b < ry.size(); ++b) {
    for (std::size_t a = 0; a < rx.size(); ++a) {
      const double v = chi.eval(c, rx.points[a], ry.points[b]).v;
      s += rx.weights[a] * ry.weights[b] * v * v;
    }
  }
  return std::sqrt(s);
}

double linf_norm(const CellGeometry& c, const BilinearOnCell& chi) {
  double m = 0.0;
  for (const double y : {c.y0, c.y1}) {
    for (const double x : {c.x0, c.x1}) m = std::max(m, std::fabs(chi.eval(c, x, y).v));
  }
  return m;
}

}  // namespace

double bilinear_lp_norm(const CellGeometry& cell, const BilinearOnCell& chi, double p) {
  cell.validate();
  check_exponent(p);
  if (p == 1.0) return l1_norm(cell, chi);
  if (p == 2.0) return l2_norm(cell, chi);
  return linf_norm(cell, chi);
}

double inverse_estimate_ratio(const CellGeometry& cell, const BilinearOnCell& chi, InverseEstimate which, double p,
                              double q) {
  cell.validate();
  check_exponent(p);
  auto denominator = [&](double r) {
    const double d = bilinear_lp_norm(cell, chi, r);
    if (!(d > 0.0)) throw ConfigError("identities: ratio undefined for the zero function");
    return d;
  };
  switch (which) {
    case InverseEstimate::DxLp: {
      const BilinearOnCell dx{chi.ax, 0.0, chi.axy, 0.0};
      return bilinear_lp_norm(cell, dx, p) * cell.hx() / denominator(p);
    }
    case InverseEstimate::DyLp: {
      const BilinearOnCell dy{chi.ay, chi.axy, 0.0, 0.0};
      return bilinear_lp_norm(cell, dy, p) * cell.hy() / denominator(p);
    }
    case InverseEstimate::EdgeTrace: {
      // chi(x1, y) is linear in y.
      const double s = 0.5 * cell.hx();
      const double trace = abs_linear_integral(chi.a0 + chi.ax * s, chi.ay + chi.axy * s, cell.hy());
      return trace * cell.hx() / denominator(1.0);
    }
    case InverseEstimate::LqLp: {
      check_exponent(q);
      const double inv_q = is_inf(q) ? 0.0 : 1.0 / q;
      const double inv_p = is_inf(p) ? 0.0 : 1.0 / p;
      const double factor = std::pow(cell.hx() * cell.hy(), inv_q - inv_p);
      return bilinear_lp_norm(cell, chi, q) / (factor * denominator(p));
    }
  }
  return 0.0;
}

}  // namespace sdfem
