#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "sdfem/error.hpp"
#include "sdfem/fem.hpp"
#include "sdfem/norms.hpp"
#include "support.hpp"

namespace sdfem {
namespace {

using test::coeffs;
using test::mesh_config;

TEST(Stabilization, RegionValues) {
  // C*/N = 1/64 on a mesh size the node layout allows.
  const ShishkinMesh m96(mesh_config(96, 1e-6));
  const StabilizationParam s64(m96, 1.5, 1.0);
  EXPECT_EQ(delta_at(s64, {30, 48}), 0.015625);  // Omega_s
  EXPECT_EQ(delta_at(s64, {60, 48}), 0.0);       // Omega_1
  EXPECT_EQ(delta_at(s64, {60, 1}), 0.0);        // Omega_12
  const ShishkinMesh m36(mesh_config(36, 1e-6));
  const StabilizationParam s36(m36, 0.5, 1.0);
  EXPECT_DOUBLE_EQ(delta_at(s36, {3, 1}), 0.5 / 36);  // Omega_2
  EXPECT_EQ(s64.stabilized_value(), 1.0 / 64);
  EXPECT_THROW(delta_at(s64, {0, 1}), DomainError);
}

TEST(Stabilization, FormulaOnOmega2) {
  // C* = 0.5 and N = 32 give 0.015625; 32 is not admissible on the mesh, so
  // the same C*/N ratio is checked at N = 48 with C* = 0.75.
  const ShishkinMesh m(mesh_config(48, 1e-6));
  const StabilizationParam s(m, 0.75, 1.0);
  EXPECT_EQ(s.delta({3, 2}), 0.015625);
  EXPECT_EQ(0.5 / 32, 0.015625);
}

TEST(Stabilization, RejectsTooLargeWeight) {
  const ShishkinMesh m(mesh_config(24, 1e-6));
  EXPECT_THROW(StabilizationParam(m, 30.0, 1.0), ConfigError);
  EXPECT_THROW(StabilizationParam(m, 0.0, 1.0), ConfigError);
  EXPECT_THROW(StabilizationParam(m, 1.0, 0.0), ConfigError);
  EXPECT_NO_THROW(StabilizationParam(m, 24.0, 1.0));
  const StabilizationParam z = StabilizationParam::zero(m);
  EXPECT_EQ(z.delta({5, 12}), 0.0);
}

TEST(Assemble, GalerkinEqualsSdfemWithoutStabilization) {
  const ShishkinMesh m(mesh_config(24, 1e-4));
  const CoefficientSet k = coeffs(1e-4, 1.3, 0.7);
  const auto f = [](double x, double y) { return std::sin(3 * x) + y; };
  const AssembledSystem g = assemble(m, k, StabilizationParam::zero(m), f, FormKind::Galerkin);
  const AssembledSystem s = assemble(m, k, StabilizationParam::zero(m), f, FormKind::Sdfem);
  const AssembledSystem sd = assemble(m, k, StabilizationParam(m, 1.0, k.c), f, FormKind::Sdfem);
  // Galerkin ignores delta entirely.
  const AssembledSystem gd = assemble(m, k, StabilizationParam(m, 1.0, k.c), f, FormKind::Galerkin);
  for (int d = 0; d < 9; ++d) {
    EXPECT_EQ(g.stencil[static_cast<std::size_t>(d)], s.stencil[static_cast<std::size_t>(d)]);
    EXPECT_EQ(g.stencil[static_cast<std::size_t>(d)], gd.stencil[static_cast<std::size_t>(d)]);
  }
  EXPECT_EQ(g.rhs, s.rhs);
  EXPECT_NE(sd.rhs, s.rhs);
}

TEST(Assemble, EntriesAreBilinearFormOfBasisFunctions) {
  const ShishkinMesh m(mesh_config(12, 1e-3));
  const CoefficientSet k = coeffs(1e-3, 1.5, 2.0);
  const StabilizationParam stab(m, 1.0, k.c);
  const AssembledSystem sys = assemble(m, k, stab, [](double, double) { return 1.0; }, FormKind::Sdfem);
  const CellQuadrature q(m, {4, false});
  const DofMap dofs(12);
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<std::size_t> pick(0, dofs.size() - 1);
  for (int t = 0; t < 40; ++t) {
    const std::size_t r = pick(rng);
    const NodeIndex vr = dofs.node(r);
    // Neighbours of r (and far nodes, whose entries vanish).
    const int di = static_cast<int>(t % 3) - 1, dj = static_cast<int>((t / 3) % 3) - 1;
    NodeIndex vs{vr.i + di, vr.j + dj};
    if (t >= 36) vs = {vr.i + 3 < 12 ? vr.i + 3 : vr.i - 3, vr.j};
    if (dofs.dirichlet(vs)) continue;
    const auto s = static_cast<std::size_t>(dofs.dof(vs));
    const double oracle = bilinear_form(m, k, stab, as_cell_function(test::hat(m, vs)),
                                        as_cell_function(test::hat(m, vr)), q);
    EXPECT_NEAR(sys.entry(r, s), oracle, 1e-12 * std::max(1.0, std::fabs(oracle)));
  }
}

TEST(Assemble, SparsePatternIsSymmetricAndApplyAgrees) {
  const ShishkinMesh m(mesh_config(18, 1e-5));
  const CoefficientSet k = coeffs(1e-5);
  const AssembledSystem sys =
      assemble(m, k, StabilizationParam(m, 1.0, 1.0), [](double x, double) { return x; }, FormKind::Sdfem);
  const Eigen::SparseMatrix<double> a = sys.to_sparse();
  Eigen::SparseMatrix<double> pattern = a, pattern_t = a.transpose();
  for (int c = 0; c < pattern.outerSize(); ++c) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(pattern, c); it; ++it) it.valueRef() = 1.0;
    for (Eigen::SparseMatrix<double>::InnerIterator it(pattern_t, c); it; ++it) it.valueRef() = 1.0;
  }
  EXPECT_EQ((Eigen::MatrixXd(pattern) - Eigen::MatrixXd(pattern_t)).norm(), 0.0);
  EXPECT_GT((Eigen::MatrixXd(a) - Eigen::MatrixXd(a.transpose())).norm(), 1e-3);  // values differ

  std::mt19937_64 rng(1);
  const DiscreteField v = test::random_field(m, rng);
  const std::vector<double> x = v.interior();
  std::vector<double> y(x.size());
  sys.apply(x, y);
  const Eigen::VectorXd ref = a * Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(x.size()));
  for (std::size_t r = 0; r < y.size(); ++r) EXPECT_NEAR(y[r], ref[static_cast<Eigen::Index>(r)], 1e-13);
}

TEST(Assemble, RejectsLowQuadratureOrder) {
  const ShishkinMesh m(mesh_config(12, 1e-3));
  EXPECT_THROW(assemble(m, coeffs(1e-3), StabilizationParam::zero(m), [](double, double) { return 0.0; },
                        FormKind::Sdfem, {1, true}),
               ConfigError);
  EXPECT_THROW(assemble(m, coeffs(1e-3), StabilizationParam::zero(m), ScalarFunction{}, FormKind::Sdfem),
               ConfigError);
}

TEST(Solve, ZeroForcingGivesZeroSolution) {
  const ShishkinMesh m(mesh_config(24, 1e-6));
  const AssembledSystem sys = assemble(m, coeffs(1e-6), StabilizationParam(m, 1.0, 1.0),
                                       [](double, double) { return 0.0; }, FormKind::Sdfem);
  for (const double r : sys.rhs) EXPECT_EQ(r, 0.0);
  const DiscreteField u = solve(m, sys);
  for (const double v : u.nodal()) EXPECT_EQ(v, 0.0);
}

TEST(Solve, LinearInForcing) {
  const ShishkinMesh m(mesh_config(24, 1e-6));
  const CoefficientSet k = coeffs(1e-6);
  const ManufacturedProblem p = make_benchmark(k);
  const StabilizationParam stab(m, 1.0, k.c);
  const AssembledSystem a = assemble(m, k, stab, [&](double x, double y) { return p.f(x, y); }, FormKind::Sdfem);
  const AssembledSystem b =
      assemble(m, k, stab, [&](double x, double y) { return -3.5 * p.f(x, y); }, FormKind::Sdfem);
  const DiscreteField ua = solve(m, a), ub = solve(m, b);
  for (std::size_t i = 0; i < ua.nodal().size(); ++i) EXPECT_NEAR(ub.nodal()[i], -3.5 * ua.nodal()[i], 1e-12);
  EXPECT_TRUE(ua.boundary_is_zero());
}

TEST(Solve, MeetsResidualContract) {
  for (const double eps : {0.5, 1e-4, 1e-8}) {
    const ShishkinMesh m(mesh_config(48, eps));
    const CoefficientSet k = eps == 0.5 ? coeffs(eps, 1e-3, 1.0) : coeffs(eps);
    const ManufacturedProblem p = make_benchmark(k);
    const AssembledSystem sys = assemble(m, k, StabilizationParam(m, 1.0, k.c),
                                         [&](double x, double y) { return p.f(x, y); }, FormKind::Sdfem);
    const LinearSolver solver(sys);
    const std::vector<double> x = solver.solve(sys.rhs);
    EXPECT_LE(solver.last_relative_residual(), LinearSolver::kResidualTolerance);
    std::vector<double> r(x.size());
    sys.apply(x, r);
    double num = 0, den = 0;
    for (std::size_t i = 0; i < r.size(); ++i) {
      num += (r[i] - sys.rhs[i]) * (r[i] - sys.rhs[i]);
      den += sys.rhs[i] * sys.rhs[i];
    }
    EXPECT_LE(std::sqrt(num / den), 1e-10);
    (void)solver.solve_transposed(sys.rhs);
    EXPECT_LE(solver.last_relative_residual(), LinearSolver::kResidualTolerance);
    EXPECT_THROW(solver.solve(std::vector<double>(3, 1.0)), ConfigError);
  }
}

TEST(Solve, SingularSystemReportsSolverError) {
  AssembledSystem sys;
  sys.n = 4;
  for (auto& d : sys.stencil) d.assign(9, 0.0);
  sys.rhs.assign(9, 1.0);
  for (std::size_t r = 0; r < 9; ++r) sys.stencil[4][r] = r == 4 ? 0.0 : 1.0;
  EXPECT_THROW(LinearSolver{sys}, SolverError);
}

TEST(Coercivity, SdfemFormDominatesHalfEnergyNorm) {
  std::mt19937_64 rng(12);
  for (const double eps : {1e-4, 1e-6}) {
    const ShishkinMesh m(mesh_config(24, eps));
    const CoefficientSet k = coeffs(eps, 1.0, 1.0);
    const StabilizationParam stab(m, 1.0, k.c);
    const AssembledSystem sys = assemble(m, k, stab, [](double, double) { return 0.0; }, FormKind::Sdfem);
    for (int t = 0; t < 20; ++t) {
      const DiscreteField v = test::random_field(m, rng);
      const double b = bilinear_form(sys, v, v);
      const double e = energy_norm(m, k, stab, v);
      EXPECT_GE(b, 0.5 * e * e);
    }
  }
}

TEST(Interpolation, ReproducesBilinears) {
  const ShishkinMesh m(mesh_config(12, 1e-3));
  const auto g = [](double x, double y) { return 1 + 2 * x + 3 * y + 4 * x * y; };
  const DiscreteField gi = interpolate(m, g);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> d(0.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    const double x = d(rng), y = d(rng);
    EXPECT_NEAR(gi.value(x, y), g(x, y), 1e-13);
    const Jet j = gi.eval(m.locate(x, y), x, y);
    EXPECT_NEAR(j.dx, 2 + 4 * y, 1e-12);
    EXPECT_NEAR(j.dy, 3 + 4 * x, 1e-12);
  }
}

TEST(Interpolation, QuadraticErrorPeaksAtMidpoint) {
  const ShishkinMesh m(mesh_config(12, 1e-3));
  const DiscreteField gi = interpolate(m, [](double x, double) { return x * x; });
  for (int i = 1; i <= 12; ++i) {
    const double x0 = m.x(i - 1), x1 = m.x(i), h = x1 - x0;
    double worst = 0.0;
    for (int s = 0; s <= 200; ++s) {
      const double x = x0 + h * s / 200.0;
      worst = std::max(worst, std::fabs(gi.eval({i, 6}, x, 0.5).v - x * x));
    }
    EXPECT_NEAR(worst, h * h / 4, 1e-15);
  }
}

TEST(Interpolation, BenchmarkErrorOnSmoothRegionIsSecondOrder) {
  const double eps = 1e-6;
  const ManufacturedProblem p = make_benchmark(coeffs(eps), Benchmark::SmoothLayers);
  auto worst_on_smooth = [&](int n) {
    const ShishkinMesh m(mesh_config(n, eps));
    const DiscreteField ui = interpolate(m, p, Part::U);
    double worst = 0.0;
    for (int j = 1; j <= n; ++j) {
      for (int i = 1; i <= n; ++i) {
        if (m.subdomain(CellIndex{i, j}) != Subdomain::OmegaS) continue;
        const CellRect r = m.cell({i, j});
        for (int a = 0; a < 5; ++a) {
          for (int b = 0; b < 5; ++b) {
            const double x = r.x0 + r.hx() * a / 4.0, y = r.y0 + r.hy() * b / 4.0;
            worst = std::max(worst, std::fabs(ui.eval({i, j}, x, y).v - p.u(x, y)));
          }
        }
      }
    }
    return worst;
  };
  const double e36 = worst_on_smooth(36), e72 = worst_on_smooth(72);
  EXPECT_GT(e72, 0.0);
  EXPECT_GT(e36 / e72, 3.5);
  EXPECT_LE(e36, 5.0 / (36.0 * 36.0));
}

TEST(DofMap, RoundTrip) {
  const DofMap d(6);
  EXPECT_EQ(d.size(), 25u);
  EXPECT_EQ(d.dof({0, 3}), -1);
  for (std::size_t k = 0; k < d.size(); ++k) EXPECT_EQ(static_cast<std::size_t>(d.dof(d.node(k))), k);
  EXPECT_THROW(d.node(25), DomainError);
  EXPECT_THROW(DofMap(1), ConfigError);
}

TEST(Galerkin, OrthogonalityUpToConsistencyTerm) {
  // B(u - U, V) = eps (Lap u, delta b V_x) for every V in V^N.
  const double eps = 1e-4;
  const ShishkinMesh m(mesh_config(24, eps));
  const CoefficientSet k = coeffs(eps);
  const ManufacturedProblem p = make_benchmark(k, Benchmark::SmoothLayers);
  const StabilizationParam stab(m, 1.0, k.c);
  const AssembledSystem sys = assemble(m, k, stab, [&](double x, double y) { return p.f(x, y); },
                                       FormKind::Sdfem, {6, true});
  const DiscreteField u = solve(m, sys);
  const CellQuadrature q(m, {6, true});
  const CellFunction err = difference(as_cell_function(p, Part::U), as_cell_function(u));
  std::mt19937_64 rng(5);
  for (int t = 0; t < 5; ++t) {
    const DiscreteField v = test::random_field(m, rng);
    const double lhs = bilinear_form(m, k, stab, err, as_cell_function(v), q);
    const double rhs = eps * integrate(m, q, [&](CellIndex c, double x, double y) {
      return p.laplacian(x, y) * stab.delta(c) * k.b * v.eval(c, x, y).dx;
    });
    const double scale = std::fabs(bilinear_form(m, k, stab, as_cell_function(p, Part::U), as_cell_function(v), q));
    EXPECT_NEAR(lhs, rhs, 1e-10 * scale);
  }
}

}  // namespace
}  // namespace sdfem
