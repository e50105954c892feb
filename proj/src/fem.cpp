#include "sdfem/fem.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/SparseLU>

#include "sdfem/error.hpp"
#include "sdfem/kernels/kernels.hpp"

namespace sdfem {

StabilizationParam::StabilizationParam(const ShishkinMesh& mesh, double c_star, double c)
    : n_(mesh.n()), c_star_(c_star) {
  if (!std::isfinite(c_star) || !(c_star > 0.0)) throw ConfigError("stabilization: C* must be > 0");
  if (!std::isfinite(c) || !(c > 0.0)) throw ConfigError("stabilization: c must be > 0");
  value_ = c_star / mesh.n();
  if (value_ > 1.0 / c) {
    throw ConfigError("stabilization: C*/N = " + std::to_string(value_) + " exceeds 1/c = " + std::to_string(1.0 / c));
  }
  values_.resize(mesh.cell_count());
  for (int j = 1; j <= n_; ++j) {
    for (int i = 1; i <= n_; ++i) {
      const Subdomain s = mesh.subdomain({i, j});
      values_[mesh.cell_offset({i, j})] = (s == Subdomain::OmegaS || s == Subdomain::Omega2) ? value_ : 0.0;
    }
  }
}

StabilizationParam StabilizationParam::zero(const ShishkinMesh& mesh) {
  StabilizationParam p;
  p.n_ = mesh.n();
  p.values_.assign(mesh.cell_count(), 0.0);
  return p;
}

double StabilizationParam::delta(CellIndex c) const {
  if (c.i < 1 || c.j < 1 || c.i > n_ || c.j > n_) throw DomainError("stabilization: cell out of range");
  return values_[static_cast<std::size_t>(c.j - 1) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(c.i - 1)];
}

double delta_at(const StabilizationParam& stab, CellIndex c) { return stab.delta(c); }

std::string_view to_string(FormKind k) { return k == FormKind::Galerkin ? "galerkin" : "sdfem"; }

namespace {

// Bilinear shape function of local corner (ax, ay) and its gradient.
struct Shape {
  double v, dx, dy;
};

Shape shape(int ax, int ay, const CellRect& r, double x, double y) {
  const double hx = r.hx(), hy = r.hy();
  const double X = ax == 0 ? (r.x1 - x) / hx : (x - r.x0) / hx;
  const double Y = ay == 0 ? (r.y1 - y) / hy : (y - r.y0) / hy;
  const double dX = ax == 0 ? -1.0 / hx : 1.0 / hx;
  const double dY = ay == 0 ? -1.0 / hy : 1.0 / hy;
  return {X * Y, dX * Y, X * dY};
}

constexpr int kCorner[4][2] = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};

}  // namespace

void AssembledSystem::apply(std::span<const double> x, std::span<double> y) const {
  const auto m = static_cast<std::size_t>(n - 1);
  if (x.size() != size() || y.size() != size()) throw ConfigError("system: vector size mismatch");
  const std::size_t pad = kernels::stencil_padding(m);
  std::vector<double> padded(size() + 2 * pad, 0.0);
  std::copy(x.begin(), x.end(), padded.begin() + static_cast<std::ptrdiff_t>(pad));
  kernels::Stencil9View view;
  view.n = m;
  for (std::size_t d = 0; d < 9; ++d) view.coeff[d] = stencil[d].data();
  kernels::stencil9_apply(view, padded, y);
}

Eigen::SparseMatrix<double> AssembledSystem::to_sparse() const {
  const int m = n - 1;
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(9 * size());
  for (int jj = 0; jj < m; ++jj) {
    for (int ii = 0; ii < m; ++ii) {
      const int r = jj * m + ii;
      for (int dj = -1; dj <= 1; ++dj) {
        for (int di = -1; di <= 1; ++di) {
          if (ii + di < 0 || ii + di >= m || jj + dj < 0 || jj + dj >= m) continue;
          const auto d = static_cast<std::size_t>((dj + 1) * 3 + (di + 1));
          triplets.emplace_back(r, r + dj * m + di, stencil[d][static_cast<std::size_t>(r)]);
        }
      }
    }
  }
  Eigen::SparseMatrix<double> a(static_cast<Eigen::Index>(size()), static_cast<Eigen::Index>(size()));
  a.setFromTriplets(triplets.begin(), triplets.end());
  a.makeCompressed();
  return a;
}

double AssembledSystem::entry(std::size_t r, std::size_t s) const {
  const auto m = static_cast<std::ptrdiff_t>(n - 1);
  if (r >= size() || s >= size()) throw DomainError("system: entry out of range");
  const auto ri = static_cast<std::ptrdiff_t>(r), si = static_cast<std::ptrdiff_t>(s);
  const std::ptrdiff_t di = si % m - ri % m, dj = si / m - ri / m;
  if (std::abs(di) > 1 || std::abs(dj) > 1) return 0.0;
  return stencil[static_cast<std::size_t>((dj + 1) * 3 + (di + 1))][r];
}

AssembledSystem assemble(const ShishkinMesh& mesh, const CoefficientSet& coeffs, const StabilizationParam& stab,
                         const ScalarFunction& f, FormKind kind, QuadratureRule quad) {
  quad.validate();
  coeffs.validate();
  if (!f) throw ConfigError("assemble: forcing is not set");
  const int n = mesh.n();
  const int m = n - 1;
  const auto size = static_cast<std::size_t>(m) * static_cast<std::size_t>(m);
  const CellQuadrature load_rule(mesh, quad);
  const Rule1D ref = gauss_legendre(quad.order);

  AssembledSystem sys;
  sys.n = n;
  sys.kind = kind;
  for (auto& s : sys.stencil) s.assign(size, 0.0);
  sys.rhs.assign(size, 0.0);

  const double eps = coeffs.epsilon, b = coeffs.b, c = coeffs.c;
  std::vector<double> w, vals;
  for (int j = 1; j <= n; ++j) {
    for (int i = 1; i <= n; ++i) {
      const CellIndex cell{i, j};
      const CellRect r = mesh.cell(cell);
      const double delta = kind == FormKind::Sdfem ? stab.delta(cell) : 0.0;

      double ke[4][4] = {};
      for (std::size_t qy = 0; qy < ref.size(); ++qy) {
        for (std::size_t qx = 0; qx < ref.size(); ++qx) {
          const double x = r.x0 + ref.points[qx] * r.hx();
          const double y = r.y0 + ref.points[qy] * r.hy();
          const double wt = ref.weights[qx] * ref.weights[qy] * r.area();
          Shape phi[4];
          for (int a = 0; a < 4; ++a) phi[a] = shape(kCorner[a][0], kCorner[a][1], r, x, y);
          for (int a = 0; a < 4; ++a) {
            const double test = phi[a].v + delta * b * phi[a].dx;
            for (int s = 0; s < 4; ++s) {
              ke[a][s] += wt * (eps * (phi[s].dx * phi[a].dx + phi[s].dy * phi[a].dy) +
                                (b * phi[s].dx + c * phi[s].v) * test);
            }
          }
        }
      }

      // Load vector with the per-cell (possibly graded) rule.
      const Rule1D& cx = load_rule.column(i);
      const Rule1D& cy = load_rule.row(j);
      w.resize(cx.size() * cy.size());
      vals.resize(w.size());
      std::vector<double> fv(w.size());
      for (std::size_t qy = 0, k = 0; qy < cy.size(); ++qy) {
        for (std::size_t qx = 0; qx < cx.size(); ++qx, ++k) {
          w[k] = cx.weights[qx] * cy.weights[qy];
          fv[k] = f(cx.points[qx], cy.points[qy]);
        }
      }

      for (int a = 0; a < 4; ++a) {
        const NodeIndex na{i - 1 + kCorner[a][0], j - 1 + kCorner[a][1]};
        if (na.i == 0 || na.j == 0 || na.i == n || na.j == n) continue;
        const auto row = static_cast<std::size_t>((na.j - 1) * m + (na.i - 1));
        for (int s = 0; s < 4; ++s) {
          const NodeIndex ns{i - 1 + kCorner[s][0], j - 1 + kCorner[s][1]};
          if (ns.i == 0 || ns.j == 0 || ns.i == n || ns.j == n) continue;
          const int d = (ns.j - na.j + 1) * 3 + (ns.i - na.i + 1);
          sys.stencil[static_cast<std::size_t>(d)][row] += ke[a][s];
        }
        for (std::size_t qy = 0, k = 0; qy < cy.size(); ++qy) {
          for (std::size_t qx = 0; qx < cx.size(); ++qx, ++k) {
            const Shape p = shape(kCorner[a][0], kCorner[a][1], r, cx.points[qx], cy.points[qy]);
            vals[k] = fv[k] * (p.v + delta * b * p.dx);
          }
        }
        sys.rhs[row] += kernels::weighted_sum(w, vals);
      }
    }
  }
  return sys;
}

struct LinearSolver::Impl {
  Eigen::SparseMatrix<double> a;
  Eigen::SparseMatrix<double> at;
  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
};

LinearSolver::LinearSolver(const AssembledSystem& system) : impl_(std::make_unique<Impl>()) {
  if (system.size() == 0) throw ConfigError("solver: empty system");
  impl_->a = system.to_sparse();
  impl_->at = impl_->a.transpose();
  impl_->lu.analyzePattern(impl_->a);
  impl_->lu.factorize(impl_->a);
  if (impl_->lu.info() != Eigen::Success) {
    throw SolverError("solver: LU factorization failed (" + impl_->lu.lastErrorMessage() +
                      "); matrix is singular or numerically singular");
  }
}

LinearSolver::~LinearSolver() = default;
LinearSolver::LinearSolver(LinearSolver&&) noexcept = default;
LinearSolver& LinearSolver::operator=(LinearSolver&&) noexcept = default;

namespace {

template <class Solve>
std::vector<double> refined_solve(const Eigen::SparseMatrix<double>& a, std::span<const double> rhs, Solve&& solve,
                                  double& residual_out) {
  const Eigen::Map<const Eigen::VectorXd> b(rhs.data(), static_cast<Eigen::Index>(rhs.size()));
  const double bnorm = b.norm();
  if (bnorm == 0.0) {
    residual_out = 0.0;
    return std::vector<double>(rhs.size(), 0.0);
  }
  Eigen::VectorXd x = solve(b);
  Eigen::VectorXd r = b - a * x;
  double rel = r.norm() / bnorm;
  for (int step = 0; step < 3 && !(rel <= LinearSolver::kResidualTolerance); ++step) {
    x += solve(r);
    r = b - a * x;
    rel = r.norm() / bnorm;
  }
  residual_out = rel;
  if (!(rel <= LinearSolver::kResidualTolerance) || !x.allFinite()) {
    // Hager-style lower bound of ||A^{-1}||_1 from the solves already available.
    const Eigen::VectorXd probe = Eigen::VectorXd::Constant(b.size(), 1.0 / static_cast<double>(b.size()));
    const Eigen::VectorXd z = solve(probe);
    const double inv_est = z.lpNorm<1>();
    double norm1 = 0.0;
    for (Eigen::Index k = 0; k < a.outerSize(); ++k) {
      double col = 0.0;
      for (Eigen::SparseMatrix<double>::InnerIterator it(a, k); it; ++it) col += std::fabs(it.value());
      norm1 = std::max(norm1, col);
    }
    throw SolverError("solver: relative residual " + std::to_string(rel) + " above " +
                      std::to_string(LinearSolver::kResidualTolerance) +
                      " (condition estimate >= " + std::to_string(norm1 * inv_est) + ")");
  }
  return std::vector<double>(x.data(), x.data() + x.size());
}

}  // namespace

std::vector<double> LinearSolver::solve(std::span<const double> rhs) const {
  if (rhs.size() != static_cast<std::size_t>(impl_->a.rows())) throw ConfigError("solver: rhs size mismatch");
  return refined_solve(
      impl_->a, rhs, [this](const Eigen::VectorXd& v) -> Eigen::VectorXd { return impl_->lu.solve(v); },
      last_residual_);
}

std::vector<double> LinearSolver::solve_transposed(std::span<const double> rhs) const {
  if (rhs.size() != static_cast<std::size_t>(impl_->a.rows())) throw ConfigError("solver: rhs size mismatch");
  return refined_solve(
      impl_->at, rhs,
      [this](const Eigen::VectorXd& v) -> Eigen::VectorXd { return impl_->lu.transpose().solve(v); },
      last_residual_);
}

DiscreteField solve(const ShishkinMesh& mesh, const AssembledSystem& system) {
  if (system.n != mesh.n()) throw ConfigError("solve: system and mesh sizes differ");
  const LinearSolver solver(system);
  const std::vector<double> x = solver.solve(system.rhs);
  return DiscreteField::from_interior(mesh, x);
}

double integrate(const ShishkinMesh& mesh, const CellQuadrature& quad,
                 const std::function<double(CellIndex, double, double)>& integrand) {
  double total = 0.0;
  std::vector<double> w, v;
  for (int j = 1; j <= mesh.n(); ++j) {
    for (int i = 1; i <= mesh.n(); ++i) {
      const Rule1D& cx = quad.column(i);
      const Rule1D& cy = quad.row(j);
      w.resize(cx.size() * cy.size());
      v.resize(w.size());
      for (std::size_t qy = 0, k = 0; qy < cy.size(); ++qy) {
        for (std::size_t qx = 0; qx < cx.size(); ++qx, ++k) {
          w[k] = cx.weights[qx] * cy.weights[qy];
          v[k] = integrand({i, j}, cx.points[qx], cy.points[qy]);
        }
      }
      total += kernels::weighted_sum(w, v);
    }
  }
  return total;
}

double bilinear_form(const ShishkinMesh& mesh, const CoefficientSet& coeffs, const StabilizationParam& stab,
                     const CellFunction& u, const CellFunction& v, const CellQuadrature& quad) {
  const double eps = coeffs.epsilon, b = coeffs.b, c = coeffs.c;
  return integrate(mesh, quad, [&](CellIndex cell, double x, double y) {
    const Jet p = u(cell, x, y);
    const Jet q = v(cell, x, y);
    return eps * (p.dx * q.dx + p.dy * q.dy) + (b * p.dx + c * p.v) * (q.v + stab.delta(cell) * b * q.dx);
  });
}

double bilinear_form(const AssembledSystem& system, const DiscreteField& v, const DiscreteField& w) {
  const std::vector<double> vi = v.interior();
  const std::vector<double> wi = w.interior();
  if (vi.size() != system.size()) throw ConfigError("bilinear_form: field and system sizes differ");
  std::vector<double> mv(vi.size());
  system.apply(vi, mv);
  const std::vector<double> ones(vi.size(), 1.0);
  return kernels::weighted_dot(ones, wi, mv);
}

}  // namespace sdfem
