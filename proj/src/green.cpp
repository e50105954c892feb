#include "sdfem/green.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include "sdfem/error.hpp"

namespace sdfem {

double GreenConfig::sigma_x(int n) const { return k * std::log(static_cast<double>(n)) / n; }
double GreenConfig::sigma_y(int n) const { return k / std::sqrt(static_cast<double>(n)); }

void GreenConfig::validate(const ShishkinMesh& mesh) const {
  if (!std::isfinite(k) || !(k > 0.0)) throw ConfigError("green: k must be > 0");
  if (!std::isfinite(K) || !(K > 0.0)) throw ConfigError("green: K must be > 0");
  if (!mesh.valid(node)) throw DomainError("green: node out of range");
  if (mesh.on_boundary(node)) throw DomainError("green: x* must be an interior node (G vanishes on the boundary)");
}

NodeIndex nearest_interior_node(const ShishkinMesh& mesh, double x, double y) {
  NodeIndex v = mesh.nearest_node(x, y);
  v.i = std::clamp(v.i, 1, mesh.n() - 1);
  v.j = std::clamp(v.j, 1, mesh.n() - 1);
  return v;
}

CellRegion omega0_prime(const ShishkinMesh& mesh, const GreenConfig& config) {
  config.validate(mesh);
  const int n = mesh.n();
  const double ln = std::log(static_cast<double>(n));
  const double xs = mesh.x(config.node.i), ys = mesh.y(config.node.j);
  const double ax = config.K * config.sigma_x(n) * ln;
  const double ay = config.K * config.sigma_y(n) * ln;
  return CellRegion::where(
      mesh,
      [&](CellIndex c) {
        const CellRect r = mesh.cell(c);
        return r.x0 < xs + ax && r.y0 < ys + ay && r.y1 > ys - ay;
      },
      "Omega_0'");
}

GreenField solve_green(const ShishkinMesh& mesh, const CoefficientSet& coeffs, const AssembledSystem& system,
                       const LinearSolver& solver, const GreenConfig& config) {
  config.validate(mesh);
  if (system.n != mesh.n()) throw ConfigError("green: system and mesh sizes differ");
  if (system.kind != FormKind::Sdfem) throw ConfigError("green: the discrete Green's function uses the SDFEM form");
  const DofMap dofs(mesh.n());
  const auto star = static_cast<std::size_t>(dofs.dof(config.node));
  std::vector<double> e(dofs.size(), 0.0);
  e[star] = 1.0;
  const std::vector<double> g = solver.solve_transposed(e);

  // Residual of the defining relation, one basis function at a time.
  const Eigen::SparseMatrix<double> mt = system.to_sparse().transpose();
  const Eigen::Map<const Eigen::VectorXd> gv(g.data(), static_cast<Eigen::Index>(g.size()));
  Eigen::VectorXd r = mt * gv;
  r[static_cast<Eigen::Index>(star)] -= 1.0;

  GreenField out{DiscreteField::from_interior(mesh, g), config, omega0_prime(mesh, config), coeffs.epsilon,
                 r.lpNorm<Eigen::Infinity>()};
  return out;
}

GreenField solve_green(const ShishkinMesh& mesh, const CoefficientSet& coeffs, const StabilizationParam& stab,
                       const GreenConfig& config, QuadratureRule quad) {
  config.validate(mesh);
  const AssembledSystem sys = assemble(
      mesh, coeffs, stab, [](double, double) { return 0.0; }, FormKind::Sdfem, quad);
  const LinearSolver solver(sys);
  return solve_green(mesh, coeffs, sys, solver, config);
}

namespace {

std::array<double, 3> decay_weights(Subdomain region, double eps) {
  switch (region) {
    case Subdomain::OmegaS: return {1.0, 1.0, 1.0};
    case Subdomain::Omega1:
    case Subdomain::Omega12: return {1.0, eps, eps};
    case Subdomain::Omega2: return {std::pow(eps, 0.25), std::pow(eps, 0.25), std::pow(eps, 0.75)};
  }
  return {1.0, 1.0, 1.0};
}

std::array<double, 3> jet_sups(const ShishkinMesh& mesh, const CellFunction& f, const CellRegion& region,
                               int sampling) {
  NormOptions opt;
  opt.sampling = sampling;
  return {region_norm(mesh, f, region, NormKind::LinfSampled, Quantity::Value, opt).value,
          region_norm(mesh, f, region, NormKind::LinfSampled, Quantity::Dx, opt).value,
          region_norm(mesh, f, region, NormKind::LinfSampled, Quantity::Dy, opt).value};
}

double combine(const std::array<double, 3>& w, const std::array<double, 3>& v) {
  return w[0] * v[0] + w[1] * v[1] + w[2] * v[2];
}

}  // namespace

DecayReport green_decay_profile(const GreenField& gfield, Subdomain region, int sampling) {
  const ShishkinMesh& mesh = gfield.G.mesh();
  const CellFunction g = as_cell_function(gfield.G);
  const CellRegion family = CellRegion::of(mesh, region);
  const CellRegion outside = family - gfield.omega0_prime;
  const CellRegion near = family & gfield.omega0_prime;

  DecayReport rep;
  rep.region = region;
  rep.sampling = sampling;
  rep.weights = decay_weights(region, gfield.epsilon);
  rep.empty = outside.empty();
  if (!rep.empty) rep.outside = jet_sups(mesh, g, outside, sampling);
  rep.weighted_outside = combine(rep.weights, rep.outside);
  rep.inside_is_family = !near.empty();
  rep.weighted_inside =
      combine(rep.weights, jet_sups(mesh, g, rep.inside_is_family ? near : gfield.omega0_prime, sampling));
  return rep;
}

std::string_view to_string(ConvectionCase c) {
  return c == ConvectionCase::OmegaPrimeInSmoothOrLayer ? "case1_inside_s_and_1" : "case2_crosses_2";
}

ConvectionCase convection_case(const ShishkinMesh& mesh, const GreenField& gfield) {
  const CellRegion allowed = CellRegion::of(mesh, Subdomain::OmegaS) | CellRegion::of(mesh, Subdomain::Omega1);
  return (gfield.omega0_prime - allowed).empty() ? ConvectionCase::OmegaPrimeInSmoothOrLayer
                                                  : ConvectionCase::OmegaPrimeCrossesCharacteristic;
}

double ErrorSplit::mismatch() const { return std::fabs(sum - direct); }

ErrorSplit error_split_terms(const ManufacturedProblem& problem, const ShishkinMesh& mesh,
                             const StabilizationParam& stab, const DiscreteField& U, const GreenField& gfield,
                             QuadratureRule quad) {
  if (&U.mesh() != &mesh || &gfield.G.mesh() != &mesh) throw ConfigError("green: fields live on another mesh");
  const CoefficientSet& k = problem.coeffs();
  const CellQuadrature rule(mesh, quad);
  const CellFunction g = as_cell_function(gfield.G);

  ErrorSplit s;
  s.term1 = -k.epsilon * integrate(mesh, rule, [&](CellIndex c, double x, double y) {
    const double delta = stab.delta(c);
    if (delta == 0.0) return 0.0;
    return problem.laplacian(x, y) * delta * k.b * gfield.G.eval(c, x, y).dx;
  });
  s.term2 = bilinear_form(mesh, k, stab, interpolation_error(mesh, problem, Part::U), g, rule);
  s.sum = s.term1 + s.term2;
  const NodeIndex v = gfield.config.node;
  s.direct = U.at(v) - problem.u(mesh.x(v.i), mesh.y(v.j));
  return s;
}

Envelopes predicted_envelopes(const ShishkinMesh& mesh, const CoefficientSet& coeffs, const StabilizationParam& stab,
                              const GreenField& gfield, double green_energy) {
  const double n = mesh.n();
  const double ln = std::log(n);
  const double eps = coeffs.epsilon;
  const double rho = mesh.config().rho;
  Envelopes e;
  e.green_energy_sq = n * ln;
  e.bilinear = (std::pow(n, -2.25) + std::pow(eps, 0.25) * std::pow(n, -2.0)) * ln * ln * ln * green_energy;
  e.convection_case = convection_case(mesh, gfield);
  const double second = e.convection_case == ConvectionCase::OmegaPrimeInSmoothOrLayer
                            ? eps * std::pow(n, -1.25)
                            : std::pow(eps, 0.25) * stab.stabilized_value();
  e.convection = (std::pow(n, -rho) + second) * ln * green_energy;
  return e;
}

LocalEstimates local_estimates(const ManufacturedProblem& problem, const ShishkinMesh& mesh,
                               const GreenConfig& config, QuadratureRule quad) {
  const CellRegion region = CellRegion::of(mesh, Subdomain::OmegaS) & omega0_prime(mesh, config);
  NormOptions opt;
  opt.quad = quad;
  LocalEstimates est;
  const double n = mesh.n();
  const double ln = std::log(n);
  est.bound_ab = std::pow(n, -mesh.config().rho) * config.sigma_y(mesh.n()) * ln;
  est.bound_c = est.bound_ab / problem.coeffs().epsilon;
  est.empty = region.empty();
  if (est.empty) return est;

  const Part parts[3] = {Part::E1, Part::E2, Part::E12};
  for (int k = 0; k < 3; ++k) {
    est.a[static_cast<std::size_t>(k)] =
        region_norm(mesh, interpolation_error(mesh, problem, parts[k]), region, NormKind::L1, Quantity::Dx, opt).value;
  }
  const CellFunction e1 = interpolation_error(mesh, problem, Part::E1);
  const CellFunction e12 = interpolation_error(mesh, problem, Part::E12);
  const CellFunction sum = [&](CellIndex c, double x, double y) {
    const Jet p = e1(c, x, y), q = e12(c, x, y);
    return Jet{p.v + q.v, p.dx + q.dx, p.dy + q.dy};
  };
  est.b = region_norm(mesh, sum, region, NormKind::L1, Quantity::Dy, opt).value;
  const CellFunction lap = [&](CellIndex, double x, double y) {
    double v = 0.0;
    for (const Part p : {Part::E1, Part::E12}) v += problem.eval(p, x, y, 2, 0) + problem.eval(p, x, y, 0, 2);
    return Jet{v, 0.0, 0.0};
  };
  est.c = region_norm(mesh, lap, region, NormKind::L1, Quantity::Value, opt).value;
  return est;
}

}  // namespace sdfem
