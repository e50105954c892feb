#pragma once

#include <functional>
#include <string_view>

namespace sdfem {

/// Constant data of -eps Lap u + b u_x + c u = f on (0,1)^2, u = 0 on the boundary.
struct CoefficientSet {
  double epsilon = 1e-6;
  double b = 1.0;
  double c = 1.0;
  double beta = 1.0;  // 0 < beta <= b

  /// Throws ConfigError unless 0 < epsilon < 1, b >= beta > 0, c > 0.
  void validate() const;
};

/// exp(-t) with the reproducible underflow policy: exactly 0 for t > 700.
double exp_neg(double t);

/// Smooth scalar field with partial derivatives d^{dx+dy} / dx^dx dy^dy,
/// dx + dy <= 3.
using SmoothField = std::function<double(double x, double y, int dx, int dy)>;

enum class Part { S, E1, E2, E12, U, F };

std::string_view to_string(Part p);

/// Exact solution u = S + E1 + E2 + E12 with closed-form derivatives and the
/// forcing f = -eps Lap u + b u_x + c u derived from it.
class ManufacturedProblem {
 public:
  ManufacturedProblem(const CoefficientSet& coeffs, SmoothField s, SmoothField e1, SmoothField e2,
                      SmoothField e12);

  const CoefficientSet& coeffs() const { return coeffs_; }

  /// Derivative of one part. u and the components accept dx + dy <= 3,
  /// f accepts dx + dy <= 1 (its gradient needs third derivatives of u).
  /// Throws ConfigError for unsupported orders.
  double eval(Part which, double x, double y, int dx = 0, int dy = 0) const;

  double u(double x, double y) const { return eval(Part::U, x, y); }
  double f(double x, double y) const { return eval(Part::F, x, y); }
  double laplacian(double x, double y) const;

  /// E1 + E2 + E12.
  double layers(double x, double y, int dx = 0, int dy = 0) const;

  SmoothField field(Part which) const;

 private:
  const SmoothField& component(Part which) const;

  CoefficientSet coeffs_;
  SmoothField s_, e1_, e2_, e12_;
};

enum class Benchmark {
  // u = g1(x) g2(y) with smooth parts x and 1 (S is bilinear).
  Layers,
  // Same layer functions but smooth parts (e^x - 1)/(e - 1) and 1 + y(1 - y),
  // so every component carries non-trivial derivatives up to third order and
  // none has a critical point inside a layer.
  SmoothLayers,
};

std::string_view to_string(Benchmark b);
/// Parses "layers" / "smooth_layers"; throws ConfigError otherwise.
Benchmark parse_benchmark(std::string_view name);

/// Tensor-product benchmark
///   g1(x) = s1(x) - (e^{-beta(1-x)/eps} - e^{-beta/eps}) / (1 - e^{-beta/eps}),
///   g2(y) = s2(y) - (e^{-y/sqrt eps} + e^{-(1-y)/sqrt eps}) / (1 + e^{-1/sqrt eps}),
/// split into S = s1 s2, E1 = l1 s2, E2 = s1 l2, E12 = l1 l2.
ManufacturedProblem make_benchmark(const CoefficientSet& coeffs, Benchmark kind = Benchmark::Layers);

double eval_component(const ManufacturedProblem& problem, Part which, double x, double y, int dx, int dy);

}  // namespace sdfem
