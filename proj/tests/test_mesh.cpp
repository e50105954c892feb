#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "sdfem/error.hpp"
#include "sdfem/mesh.hpp"

namespace sdfem {
namespace {

MeshConfig config(int n, double eps, double beta = 1.0, double rho = 2.5) {
  MeshConfig c;
  c.n = n;
  c.epsilon = eps;
  c.beta = beta;
  c.rho = rho;
  return c;
}

TEST(TransitionParams, UnsaturatedValues) {
  // Oracle: the closed forms evaluated in long double.
  const long double l64 = std::log(64.0L);
  const TransitionParams p = compute_transition_params(config(64, 1e-4));
  EXPECT_NEAR(p.lambda_x, static_cast<double>(2.5L * 1e-4L * l64), 1e-18);
  EXPECT_NEAR(p.lambda_y, static_cast<double>(2.5L * 1e-2L * l64), 1e-16);
  // Reference values are quoted to 7 digits.
  EXPECT_NEAR(p.lambda_x, 1.039722e-3, 2e-6 * 1.039722e-3);
  EXPECT_NEAR(p.lambda_y, 1.039722e-1, 2e-6 * 1.039722e-1);
  EXPECT_FALSE(p.saturated_x);
  EXPECT_FALSE(p.saturated_y);
  // The formula is defined for this N but a mesh is not.
  EXPECT_THROW(ShishkinMesh(config(64, 1e-4)), ConfigError);
  EXPECT_THROW(compute_transition_params(config(1, 1e-4)), ConfigError);
}

TEST(TransitionParams, BetaScalesExponentialLayer) {
  const TransitionParams p = compute_transition_params(config(36, 1e-6, 2.0));
  EXPECT_NEAR(p.lambda_x, 4.479399e-6, 5e-13);
  EXPECT_NEAR(p.lambda_y, 8.958797e-3, 5e-10);
}

TEST(TransitionParams, SaturatedValues) {
  const TransitionParams p = compute_transition_params(config(6, 0.999));
  EXPECT_EQ(p.lambda_x, 0.5);
  EXPECT_EQ(p.lambda_y, 0.25);
  EXPECT_TRUE(p.saturated_x);
  EXPECT_TRUE(p.saturated_y);
}

TEST(MeshConfig, RejectsInvalidInput) {
  EXPECT_THROW(config(0, 1e-4).validate(), ConfigError);
  EXPECT_THROW(config(20, 1e-4).validate(), ConfigError);
  EXPECT_THROW(config(24, 0.0).validate(), ConfigError);
  EXPECT_THROW(config(24, std::nan("")).validate(), ConfigError);
  EXPECT_THROW(config(24, 1e-4, -1.0).validate(), ConfigError);
  EXPECT_THROW(config(24, 1e-4, 1.0, std::numeric_limits<double>::infinity()).validate(), ConfigError);
  EXPECT_THROW(ShishkinMesh(config(10, 1e-4)), ConfigError);
  EXPECT_NO_THROW(config(24, 1e-4).validate());
}

TEST(ShishkinMesh, SaturatedMeshIsUniformInX) {
  const ShishkinMesh m(config(6, 0.999));
  for (int i = 0; i <= 6; ++i) EXPECT_NEAR(m.x(i), i / 6.0, 1e-15);
}

TEST(ShishkinMesh, TransitionNodesAndSteps) {
  const ShishkinMesh m(config(12, 1e-4));
  const TransitionParams& p = m.params();
  EXPECT_EQ(m.x(6), 1.0 - p.lambda_x);
  EXPECT_NEAR(m.x(7) - m.x(6), p.lambda_x / 6.0, 1e-17);
  EXPECT_EQ(m.y(4), p.lambda_y);
  EXPECT_EQ(m.y(8), 1.0 - p.lambda_y);
  EXPECT_NEAR(m.y(5) - m.y(4), (1.0 - 2.0 * p.lambda_y) / 4.0, 1e-15);
  EXPECT_EQ(m.x(0), 0.0);
  EXPECT_EQ(m.x(12), 1.0);
  EXPECT_EQ(m.y(12), 1.0);
}

TEST(ShishkinMesh, RandomConfigsKeepExactTransitionsAndStepBounds) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> nd(1, 40);
  std::uniform_real_distribution<double> le(-9.0, -1.0), bd(0.5, 3.0), rd(1.0, 3.0);
  for (int t = 0; t < 50; ++t) {
    const MeshConfig c = config(6 * nd(rng), std::pow(10.0, le(rng)), bd(rng), rd(rng));
    const ShishkinMesh m(c);
    const int n = c.n;
    const TransitionParams& p = m.params();
    EXPECT_EQ(m.x(n / 2), 1.0 - p.lambda_x);
    EXPECT_EQ(m.y(n / 3), p.lambda_y);
    EXPECT_EQ(m.y(2 * n / 3), 1.0 - p.lambda_y);
    for (int i = 1; i <= n; ++i) {
      EXPECT_GT(m.x(i), m.x(i - 1));
      EXPECT_GT(m.y(i), m.y(i - 1));
    }
    const double tol = 1e-14;
    EXPECT_GE(m.coarse_hx(), 1.0 / n - tol);
    EXPECT_LE(m.coarse_hx(), 3.0 / n + tol);
    EXPECT_GE(m.coarse_hy(), 1.0 / n - tol);
    EXPECT_LE(m.coarse_hy(), 3.0 / n + tol);
    EXPECT_NEAR(m.fine_hx(), 2.0 * p.lambda_x / n, 1e-15 * p.lambda_x);
    EXPECT_NEAR(m.fine_hy(), 3.0 * p.lambda_y / n, 1e-15 * p.lambda_y);
    if (!p.saturated_x) {
      EXPECT_NEAR(m.fine_hx(), 2.0 * c.rho * c.epsilon / c.beta * std::log(n) / n, 1e-13 * m.fine_hx());
    }
    if (!p.saturated_y) {
      EXPECT_NEAR(m.fine_hy(), 3.0 * c.rho * std::sqrt(c.epsilon) * std::log(n) / n, 1e-13 * m.fine_hy());
    }
  }
}

TEST(Classification, PointExamples) {
  const ShishkinMesh m(config(24, 1e-6));
  const double lx = m.params().lambda_x;
  EXPECT_EQ(classify_point(m, 0.5, 0.5), Subdomain::OmegaS);
  EXPECT_EQ(classify_point(m, 1.0, 0.0), Subdomain::Omega12);
  EXPECT_EQ(classify_point(m, 1.0 - lx, 0.5), Subdomain::Omega1);
  EXPECT_EQ(classify_point(m, 0.5, m.params().lambda_y), Subdomain::Omega2);
  EXPECT_EQ(classify_point(m, 1.0 - lx, 1.0 - m.params().lambda_y), Subdomain::Omega12);
  EXPECT_THROW(classify_point(m, 1.5, 0.5), DomainError);
  EXPECT_THROW(classify_point(m, 0.5, -0.1), DomainError);
}

TEST(Classification, CellExamples) {
  const ShishkinMesh m(config(12, 1e-4));
  EXPECT_EQ(classify_cell(m, {3, 6}), Subdomain::OmegaS);
  EXPECT_EQ(classify_cell(m, {10, 2}), Subdomain::Omega12);
  EXPECT_EQ(classify_cell(m, {10, 6}), Subdomain::Omega1);
  EXPECT_EQ(classify_cell(m, {3, 11}), Subdomain::Omega2);
  EXPECT_THROW(classify_cell(m, {0, 1}), DomainError);
  EXPECT_THROW(classify_cell(m, {1, 13}), DomainError);
}

TEST(Classification, MeasuresMatchAnalyticAreas) {
  for (const double eps : {1e-2, 1e-5, 1e-8}) {
    const ShishkinMesh m(config(48, eps));
    const double lx = m.params().lambda_x, ly = m.params().lambda_y;
    double area[4] = {0, 0, 0, 0};
    for (int j = 1; j <= 48; ++j) {
      for (int i = 1; i <= 48; ++i) {
        area[static_cast<int>(m.subdomain(CellIndex{i, j}))] += m.cell({i, j}).area();
      }
    }
    EXPECT_NEAR(area[static_cast<int>(Subdomain::OmegaS)], (1 - lx) * (1 - 2 * ly), 1e-14);
    EXPECT_NEAR(area[static_cast<int>(Subdomain::Omega1)], lx * (1 - 2 * ly), 1e-14);
    EXPECT_NEAR(area[static_cast<int>(Subdomain::Omega2)], (1 - lx) * 2 * ly, 1e-14);
    EXPECT_NEAR(area[static_cast<int>(Subdomain::Omega12)], lx * 2 * ly, 1e-14);
  }
}

TEST(ShishkinMesh, LocateAndNearestNode) {
  const ShishkinMesh m(config(24, 1e-4));
  for (int j = 1; j <= 24; ++j) {
    for (int i = 1; i <= 24; ++i) {
      const CellRect r = m.cell({i, j});
      EXPECT_EQ(m.locate(r.xc(), r.yc()), (CellIndex{i, j}));
      EXPECT_EQ(m.subdomain(r.xc(), r.yc()), m.subdomain(CellIndex{i, j}));
    }
  }
  EXPECT_EQ(m.locate(1.0, 1.0), (CellIndex{24, 24}));
  EXPECT_EQ(m.locate(0.0, 0.0), (CellIndex{1, 1}));
  EXPECT_EQ(m.nearest_node(m.x(5) + 1e-9, m.y(20) - 1e-9), (NodeIndex{5, 20}));
  EXPECT_TRUE(m.on_boundary(NodeIndex{0, 3}));
  EXPECT_FALSE(m.on_boundary(NodeIndex{1, 3}));
  EXPECT_FALSE(m.valid(NodeIndex{25, 0}));
  EXPECT_EQ(m.cell_count(), 576u);
}

}  // namespace
}  // namespace sdfem
