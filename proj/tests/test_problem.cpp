#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "sdfem/error.hpp"
#include "sdfem/mesh.hpp"
#include "sdfem/problem.hpp"

namespace sdfem {
namespace {

CoefficientSet coeffs(double eps, double b = 1.0, double c = 1.0, double beta = 1.0) {
  CoefficientSet k;
  k.epsilon = eps;
  k.b = b;
  k.c = c;
  k.beta = beta;
  return k;
}

// Fourth-order central differences; the step is tied to the local length scale.
double fd1(const std::function<double(double)>& g, double t, double h) {
  return (g(t - 2 * h) - 8 * g(t - h) + 8 * g(t + h) - g(t + 2 * h)) / (12 * h);
}
double fd2(const std::function<double(double)>& g, double t, double h) {
  return (-g(t - 2 * h) + 16 * g(t - h) - 30 * g(t) + 16 * g(t + h) - g(t + 2 * h)) / (12 * h * h);
}

TEST(CoefficientSet, Validation) {
  EXPECT_NO_THROW(coeffs(1e-6).validate());
  EXPECT_THROW(coeffs(1.0).validate(), ConfigError);
  EXPECT_THROW(coeffs(0.0).validate(), ConfigError);
  EXPECT_THROW(coeffs(1e-6, 0.5, 1.0, 1.0).validate(), ConfigError);
  EXPECT_THROW(coeffs(1e-6, 1.0, 0.0).validate(), ConfigError);
  EXPECT_THROW(make_benchmark(coeffs(2.0)), ConfigError);
}

TEST(ExpNeg, UnderflowPolicy) {
  EXPECT_EQ(exp_neg(700.5), 0.0);
  EXPECT_GT(exp_neg(699.0), 0.0);
  EXPECT_DOUBLE_EQ(exp_neg(1.0), std::exp(-1.0));
}

TEST(Benchmark, ParseNames) {
  EXPECT_EQ(parse_benchmark("layers"), Benchmark::Layers);
  EXPECT_EQ(parse_benchmark("smooth_layers"), Benchmark::SmoothLayers);
  EXPECT_THROW(parse_benchmark("bumps"), ConfigError);
  EXPECT_EQ(to_string(Benchmark::SmoothLayers), "smooth_layers");
}

TEST(Benchmark, VanishesOnBoundary) {
  for (const Benchmark kind : {Benchmark::Layers, Benchmark::SmoothLayers}) {
    for (const double eps : {1e-2, 1e-6, 1e-9}) {
      const ManufacturedProblem p = make_benchmark(coeffs(eps), kind);
      for (int k = 0; k <= 100; ++k) {
        const double t = k / 100.0;
        EXPECT_NEAR(p.u(0.0, t), 0.0, 1e-15);
        EXPECT_NEAR(p.u(1.0, t), 0.0, 1e-15);
        EXPECT_NEAR(p.u(t, 0.0), 0.0, 1e-15);
        EXPECT_NEAR(p.u(t, 1.0), 0.0, 1e-15);
      }
    }
  }
}

TEST(Benchmark, InteriorValueIsSmoothPart) {
  const ManufacturedProblem p = make_benchmark(coeffs(1e-8));
  EXPECT_NEAR(p.u(0.5, 0.5), 0.5, 1e-15);
  EXPECT_EQ(p.layers(0.5, 0.5), 0.0);
}

TEST(Benchmark, PartsSumToSolution) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> d(0.0, 1.0);
  for (const Benchmark kind : {Benchmark::Layers, Benchmark::SmoothLayers}) {
    const ManufacturedProblem p = make_benchmark(coeffs(1e-3), kind);
    for (int t = 0; t < 50; ++t) {
      const double x = d(rng), y = d(rng);
      for (int dx = 0; dx <= 3; ++dx) {
        for (int dy = 0; dx + dy <= 3; ++dy) {
          const double sum = p.eval(Part::S, x, y, dx, dy) + p.eval(Part::E1, x, y, dx, dy) +
                             p.eval(Part::E2, x, y, dx, dy) + p.eval(Part::E12, x, y, dx, dy);
          const double u = p.eval(Part::U, x, y, dx, dy);
          EXPECT_NEAR(u, sum, 1e-12 * std::max(1.0, std::fabs(u)));
          EXPECT_EQ(eval_component(p, Part::E1, x, y, dx, dy), p.eval(Part::E1, x, y, dx, dy));
        }
      }
    }
  }
}

TEST(Benchmark, RejectsUnsupportedOrders) {
  const ManufacturedProblem p = make_benchmark(coeffs(1e-3));
  EXPECT_THROW(p.eval(Part::U, 0.5, 0.5, 4, 0), ConfigError);
  EXPECT_THROW(p.eval(Part::U, 0.5, 0.5, 2, 2), ConfigError);
  EXPECT_THROW(p.eval(Part::F, 0.5, 0.5, 2, 0), ConfigError);
  EXPECT_THROW(p.eval(Part::U, 0.5, 0.5, -1, 0), ConfigError);
}

// The forcing satisfies the equation against a finite-difference oracle.
TEST(Benchmark, ForcingMatchesFiniteDifferenceResidual) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(0.0, 1.0);
  for (const Benchmark kind : {Benchmark::Layers, Benchmark::SmoothLayers}) {
    for (const double eps : {1e-2, 1e-4, 1e-6}) {
      const CoefficientSet k = coeffs(eps, 1.5, 2.0, 1.0);
      const ManufacturedProblem p = make_benchmark(k, kind);
      const double se = std::sqrt(eps);
      for (int t = 0; t < 25; ++t) {
        // Alternate between points inside the layers and generic points.
        double x = d(rng), y = d(rng);
        if (t % 3 == 1) x = 1.0 - 5.0 * eps * d(rng) - 1e-2 * eps;
        if (t % 3 == 2) y = 5.0 * se * d(rng) + 1e-2 * se;
        // Resolve the layer scale inside a layer, use an O(1) step elsewhere
        // so rounding does not dominate.
        const double hx = 1.0 - x < 200.0 * eps ? 1e-2 * eps : 1e-3;
        const double hy = std::min(y, 1.0 - y) < 200.0 * se ? 1e-2 * se : 1e-3;
        const auto gx = [&](double s) { return p.u(s, y); };
        const auto gy = [&](double s) { return p.u(x, s); };
        const double uxx = fd2(gx, x, hx), uyy = fd2(gy, y, hy), ux = fd1(gx, x, hx);
        const double lhs = -eps * (uxx + uyy) + k.b * ux + k.c * p.u(x, y);
        const double scale = eps * (std::fabs(uxx) + std::fabs(uyy)) + k.b * std::fabs(ux) + k.c * std::fabs(p.u(x, y));
        EXPECT_NEAR(lhs, p.f(x, y), 1e-6 * scale) << "eps=" << eps << " x=" << x << " y=" << y;
      }
    }
  }
}

TEST(Benchmark, DerivativesMatchFiniteDifferences) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> d(0.05, 0.95);
  for (const double eps : {1e-3, 1e-6}) {
    const ManufacturedProblem p = make_benchmark(coeffs(eps), Benchmark::SmoothLayers);
    const double se = std::sqrt(eps);
    for (const Part part : {Part::S, Part::E1, Part::E2, Part::E12}) {
      for (int t = 0; t < 10; ++t) {
        const double x = 1.0 - eps * 3.0 * d(rng), y = se * 3.0 * d(rng);
        // Resolve the layer scale only in directions where the part has a layer;
        // elsewhere an O(1) step keeps rounding below the tolerance.
        const bool x_layer = part == Part::E1 || part == Part::E12;
        const bool y_layer = part == Part::E2 || part == Part::E12;
        const double hx = x_layer ? 1e-2 * eps : 1e-3;
        const double hy = y_layer ? 1e-2 * se : 1e-3;
        for (int dx = 0; dx <= 2; ++dx) {
          for (int dy = 0; dx + dy <= 2; ++dy) {
            const auto gx = [&](double s) { return p.eval(part, s, y, dx, dy); };
            const auto gy = [&](double s) { return p.eval(part, x, s, dx, dy); };
            const double ex = p.eval(part, x, y, dx + 1, dy), ey = p.eval(part, x, y, dx, dy + 1);
            EXPECT_NEAR(fd1(gx, x, hx), ex, 1e-7 * std::max(1.0, std::fabs(ex)));
            EXPECT_NEAR(fd1(gy, y, hy), ey, 1e-7 * std::max(1.0, std::fabs(ey)));
          }
        }
      }
    }
  }
}

TEST(Benchmark, ExponentialLayerSlopeScalesWithInverseEps) {
  // |d/dx E1|(1, 1/2) = beta/eps * s2(1/2) / (1 - e^{-beta/eps}).
  for (const double eps : {1e-3, 1e-6}) {
    const ManufacturedProblem p = make_benchmark(coeffs(eps, 2.0, 1.0, 2.0));
    EXPECT_NEAR(std::fabs(p.eval(Part::E1, 1.0, 0.5, 1, 0)) * eps / 2.0, 1.0, 1e-12);
  }
}

TEST(Benchmark, CharacteristicLayerCurvatureRatio) {
  // d^2/dy^2 E2 at y = 0 scales like 1/eps: ratio across two decades is 100.
  const double a = make_benchmark(coeffs(1e-4)).eval(Part::E2, 0.5, 0.0, 0, 2);
  const double b = make_benchmark(coeffs(1e-6)).eval(Part::E2, 0.5, 0.0, 0, 2);
  EXPECT_NEAR(b / a, 100.0, 100.0 * 1e-6);
}

// sup |d^{i+j} comp| / weight is bounded independently of eps.
TEST(Benchmark, DecompositionBoundsAreUniformInEps) {
  const double epss[3] = {1e-3, 1e-5, 1e-7};
  for (const Benchmark kind : {Benchmark::Layers, Benchmark::SmoothLayers}) {
    for (const Part part : {Part::S, Part::E1, Part::E2, Part::E12}) {
      for (int i = 0; i <= 3; ++i) {
        for (int j = 0; i + j <= 3; ++j) {
          double c[3] = {0, 0, 0};
          for (int e = 0; e < 3; ++e) {
            const double eps = epss[e], se = std::sqrt(eps);
            const ManufacturedProblem p = make_benchmark(coeffs(eps), kind);
            for (int a = 0; a <= 100; ++a) {
              for (int b = 0; b <= 100; ++b) {
                const double x = a / 100.0, y = b / 100.0;
                const double ex = exp_neg((1.0 - x) / eps);
                const double ey = exp_neg(y / se) + exp_neg((1.0 - y) / se);
                double w = 1.0;
                if (part == Part::E1) w = std::pow(eps, -i) * ex;
                if (part == Part::E2) w = std::pow(eps, -0.5 * j) * ey;
                if (part == Part::E12) w = std::pow(eps, -(i + 0.5 * j)) * ex * ey;
                if (!(w > 1e-280)) continue;
                c[e] = std::max(c[e], std::fabs(p.eval(part, x, y, i, j)) / w);
              }
            }
          }
          for (int e = 0; e + 1 < 3; ++e) {
            if (c[e] == 0.0 && c[e + 1] == 0.0) continue;  // derivative vanishes identically
            const double ratio = c[e] / c[e + 1];
            EXPECT_GE(ratio, 0.25) << to_string(part) << " i=" << i << " j=" << j;
            EXPECT_LE(ratio, 4.0) << to_string(part) << " i=" << i << " j=" << j;
          }
        }
      }
    }
  }
}

TEST(Benchmark, LayerTermsAreSmallOnSmoothRegion) {
  for (const double eps : {1e-4, 1e-6, 1e-8}) {
    for (const int n : {24, 48, 96}) {
      MeshConfig mc;
      mc.n = n;
      mc.epsilon = eps;
      const ShishkinMesh m(mc);
      const ManufacturedProblem p = make_benchmark(coeffs(eps), Benchmark::SmoothLayers);
      double worst = 0.0;
      for (int j = n / 3; j <= 2 * n / 3; ++j) {
        for (int i = 0; i <= n / 2; ++i) {
          const double x = m.x(i), y = m.y(j);
          worst = std::max(worst, std::fabs(p.eval(Part::E1, x, y)) + std::fabs(p.eval(Part::E2, x, y)) +
                                      std::fabs(p.eval(Part::E12, x, y)));
        }
      }
      EXPECT_LE(worst, 4.0 * std::pow(n, -2.5)) << "eps=" << eps << " N=" << n;
    }
  }
}

TEST(Benchmark, CustomComponents) {
  const SmoothField zero = [](double, double, int, int) { return 0.0; };
  const SmoothField s = [](double x, double y, int dx, int dy) {
    if (dx == 0 && dy == 0) return x * (1 - x) * y * (1 - y);
    if (dx == 1 && dy == 0) return (1 - 2 * x) * y * (1 - y);
    if (dx == 2 && dy == 0) return -2 * y * (1 - y);
    if (dx == 0 && dy == 2) return -2 * x * (1 - x);
    if (dx == 0 && dy == 1) return x * (1 - x) * (1 - 2 * y);
    return 0.0;
  };
  const ManufacturedProblem p(coeffs(0.1), s, zero, zero, zero);
  const double x = 0.3, y = 0.6;
  const double expect = -0.1 * (-2 * y * (1 - y) - 2 * x * (1 - x)) + (1 - 2 * x) * y * (1 - y) + x * (1 - x) * y * (1 - y);
  EXPECT_NEAR(p.f(x, y), expect, 1e-15);
}

}  // namespace
}  // namespace sdfem
