#include "sdfem/norms.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "sdfem/error.hpp"
#include "sdfem/kernels/kernels.hpp"

namespace sdfem {

std::string_view to_string(NormKind k) {
  switch (k) {
    case NormKind::L1: return "L1";
    case NormKind::L2: return "L2";
    case NormKind::LinfNodes: return "Linf_nodes";
    case NormKind::LinfSampled: return "Linf_sampled";
    case NormKind::W1infSampled: return "W1inf_sampled";
    case NormKind::Energy: return "energy";
  }
  return "?";
}

std::string_view to_string(Quantity q) {
  switch (q) {
    case Quantity::Value: return "value";
    case Quantity::Dx: return "dx";
    case Quantity::Dy: return "dy";
    case Quantity::Gradient: return "gradient";
  }
  return "?";
}

namespace {

double pick(const Jet& j, Quantity q, NormKind kind) {
  switch (q) {
    case Quantity::Value: return j.v;
    case Quantity::Dx: return j.dx;
    case Quantity::Dy: return j.dy;
    case Quantity::Gradient:
      if (kind == NormKind::L1) return std::fabs(j.dx) + std::fabs(j.dy);
      if (kind == NormKind::L2) return std::hypot(j.dx, j.dy);
      return std::max(std::fabs(j.dx), std::fabs(j.dy));
  }
  return 0.0;
}

double quadrature_norm(const ShishkinMesh& mesh, const CellFunction& f, const CellRegion& region, NormKind kind,
                       Quantity quantity, const QuadratureRule& rule) {
  const CellQuadrature quad(mesh, rule);
  std::vector<double> w, v;
  double total = 0.0;
  for (const CellIndex c : region.cells()) {
    const Rule1D& cx = quad.column(c.i);
    const Rule1D& cy = quad.row(c.j);
    w.resize(cx.size() * cy.size());
    v.resize(w.size());
    for (std::size_t qy = 0, k = 0; qy < cy.size(); ++qy) {
      for (std::size_t qx = 0; qx < cx.size(); ++qx, ++k) {
        w[k] = cx.weights[qx] * cy.weights[qy];
        v[k] = pick(f(c, cx.points[qx], cy.points[qy]), quantity, kind);
      }
    }
    total += kind == NormKind::L1 ? kernels::weighted_abs_sum(w, v) : kernels::weighted_sq_sum(w, v);
  }
  return kind == NormKind::L1 ? total : std::sqrt(total);
}

// Sup of |value|, |dx|, |dy| over the sampling points of the region.
std::array<double, 3> sampled_sups(const ShishkinMesh& mesh, const CellFunction& f, const CellRegion& region,
                                   int sampling) {
  std::array<std::vector<double>, 3> vals;
  for (const CellIndex c : region.cells()) {
    const CellRect r = mesh.cell(c);
    for (int b = 0; b < sampling; ++b) {
      const double y = b == sampling - 1 ? r.y1 : r.y0 + r.hy() * b / (sampling - 1);
      for (int a = 0; a < sampling; ++a) {
        const double x = a == sampling - 1 ? r.x1 : r.x0 + r.hx() * a / (sampling - 1);
        const Jet j = f(c, x, y);
        vals[0].push_back(j.v);
        vals[1].push_back(j.dx);
        vals[2].push_back(j.dy);
      }
    }
  }
  return {kernels::max_abs(vals[0]), kernels::max_abs(vals[1]), kernels::max_abs(vals[2])};
}

}  // namespace

NormReport region_norm(const ShishkinMesh& mesh, const CellFunction& f, const CellRegion& region, NormKind kind,
                       Quantity quantity, const NormOptions& options) {
  if (region.n() != mesh.n()) throw ConfigError("norms: region belongs to another mesh");
  NormReport rep;
  rep.region = region.label();
  rep.kind = kind;
  rep.quantity = quantity;
  switch (kind) {
    case NormKind::L1:
    case NormKind::L2:
      rep.value = quadrature_norm(mesh, f, region, kind, quantity, options.quad);
      break;
    case NormKind::LinfNodes: {
      std::vector<double> v;
      for (const CellIndex c : region.cells()) {
        const CellRect r = mesh.cell(c);
        for (const double y : {r.y0, r.y1}) {
          for (const double x : {r.x0, r.x1}) v.push_back(pick(f(c, x, y), quantity, kind));
        }
      }
      rep.value = kernels::max_abs(v);
      break;
    }
    case NormKind::LinfSampled:
    case NormKind::W1infSampled: {
      if (options.sampling < 2) throw ConfigError("norms: sampling must be >= 2 points per direction");
      rep.sampling = options.sampling;
      const auto s = sampled_sups(mesh, f, region, options.sampling);
      if (kind == NormKind::W1infSampled) {
        rep.value = s[0] + s[1] + s[2];
      } else {
        switch (quantity) {
          case Quantity::Value: rep.value = s[0]; break;
          case Quantity::Dx: rep.value = s[1]; break;
          case Quantity::Dy: rep.value = s[2]; break;
          case Quantity::Gradient: rep.value = std::max(s[1], s[2]); break;
        }
      }
      break;
    }
    case NormKind::Energy:
      throw ConfigError("norms: the energy norm needs coefficients, use energy_norm");
  }
  return rep;
}

EnergyParts energy_parts(const ShishkinMesh& mesh, const CoefficientSet& coeffs, const StabilizationParam& stab,
                         const CellFunction& v, const CellRegion& region, const QuadratureRule& rule) {
  const CellQuadrature quad(mesh, rule);
  EnergyParts parts;
  std::vector<double> w, vx, vy, vv;
  for (const CellIndex c : region.cells()) {
    const Rule1D& cx = quad.column(c.i);
    const Rule1D& cy = quad.row(c.j);
    w.resize(cx.size() * cy.size());
    vx.resize(w.size());
    vy.resize(w.size());
    vv.resize(w.size());
    for (std::size_t qy = 0, k = 0; qy < cy.size(); ++qy) {
      for (std::size_t qx = 0; qx < cx.size(); ++qx, ++k) {
        w[k] = cx.weights[qx] * cy.weights[qy];
        const Jet j = v(c, cx.points[qx], cy.points[qy]);
        vv[k] = j.v;
        vx[k] = j.dx;
        vy[k] = j.dy;
      }
    }
    const double delta = stab.delta(c);
    parts.streamline += (coeffs.epsilon + coeffs.b * coeffs.b * delta) * kernels::weighted_sq_sum(w, vx);
    parts.crosswind += coeffs.epsilon * kernels::weighted_sq_sum(w, vy);
    parts.reaction += coeffs.c * kernels::weighted_sq_sum(w, vv);
  }
  return parts;
}

double energy_norm(const ShishkinMesh& mesh, const CoefficientSet& coeffs, const StabilizationParam& stab,
                   const CellFunction& v, const QuadratureRule& quad) {
  return std::sqrt(energy_parts(mesh, coeffs, stab, v, CellRegion::all(mesh), quad).squared());
}

double energy_norm(const ShishkinMesh& mesh, const CoefficientSet& coeffs, const StabilizationParam& stab,
                   const DiscreteField& v, const QuadratureRule& quad) {
  return energy_norm(mesh, coeffs, stab, as_cell_function(v), quad);
}

std::vector<NormReport> interp_error_table(const ManufacturedProblem& problem, const ShishkinMesh& mesh,
                                           const NormOptions& options) {
  const CellFunction e = interpolation_error(mesh, problem, Part::U);
  const CellRegion s = CellRegion::of(mesh, Subdomain::OmegaS);
  CellRegion rest = s.complement();
  std::vector<NormReport> out;
  out.push_back(region_norm(mesh, e, s, NormKind::LinfSampled, Quantity::Value, options));
  out.push_back(region_norm(mesh, e, rest, NormKind::LinfSampled, Quantity::Value, options));
  out.back().region = "Omega\\Omega_s";
  return out;
}

double nodal_error_smooth_and_layer(const DiscreteField& U, const ManufacturedProblem& problem) {
  const ShishkinMesh& mesh = U.mesh();
  const int n = mesh.n();
  std::vector<double> err;
  for (int j = n / 3; j <= 2 * n / 3; ++j) {
    for (int i = 0; i <= n; ++i) err.push_back(U.at({i, j}) - problem.u(mesh.x(i), mesh.y(j)));
  }
  return kernels::max_abs(err);
}

double fit_rate(std::span<const std::pair<double, double>> samples, double ln_power) {
  if (samples.size() < 2) throw ConfigError("fit_rate: need at least two (N, error) pairs");
  double sx = 0, sy = 0;
  std::vector<double> xs, ys;
  for (const auto& [n, e] : samples) {
    if (!(n > 1.0)) throw ConfigError("fit_rate: N must exceed 1");
    if (!(e > 0.0) || !std::isfinite(e)) throw ConfigError("fit_rate: errors must be positive and finite");
    const double x = std::log(n);
    const double y = std::log(e) - ln_power * std::log(std::log(n));
    xs.push_back(x);
    ys.push_back(y);
    sx += x;
    sy += y;
  }
  const double m = static_cast<double>(xs.size());
  const double mx = sx / m, my = sy / m;
  double sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    sxx += (xs[k] - mx) * (xs[k] - mx);
    sxy += (xs[k] - mx) * (ys[k] - my);
  }
  if (!(sxx > 0.0)) throw ConfigError("fit_rate: N values must not all coincide");
  return -sxy / sxx;
}

}  // namespace sdfem
