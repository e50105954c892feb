#pragma once

#include <array>
#include <functional>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/SparseCore>

#include "sdfem/field.hpp"
#include "sdfem/mesh.hpp"
#include "sdfem/problem.hpp"
#include "sdfem/quadrature.hpp"

namespace sdfem {

/// Piecewise constant streamline-diffusion weight: C*/N on cells of
/// Omega_s and Omega_2, zero on Omega_1 and Omega_12.
class StabilizationParam {
 public:
  /// Throws ConfigError unless 0 < C*/N <= 1/c.
  StabilizationParam(const ShishkinMesh& mesh, double c_star, double c);
  /// delta = 0 on every cell (turns the SDFEM form into the Galerkin form).
  static StabilizationParam zero(const ShishkinMesh& mesh);

  double c_star() const { return c_star_; }
  /// C*/N.
  double stabilized_value() const { return value_; }
  double delta(CellIndex c) const;

 private:
  StabilizationParam() = default;
  int n_ = 0;
  double c_star_ = 0.0;
  double value_ = 0.0;
  std::vector<double> values_;
};

double delta_at(const StabilizationParam& stab, CellIndex c);

enum class FormKind { Galerkin, Sdfem };
std::string_view to_string(FormKind k);

using ScalarFunction = std::function<double(double x, double y)>;

/// Operator on the (N-1)^2 interior dofs, stored as the nine diagonals of the
/// tensor-grid stencil (coefficient d = (dj + 1) * 3 + (di + 1)), plus the load.
struct AssembledSystem {
  int n = 0;  // mesh intervals; the unknown grid is (n-1) x (n-1)
  FormKind kind = FormKind::Sdfem;
  std::array<std::vector<double>, 9> stencil;
  std::vector<double> rhs;

  std::size_t size() const { return rhs.size(); }
  /// y = M x through the stencil kernel.
  void apply(std::span<const double> x, std::span<double> y) const;
  Eigen::SparseMatrix<double> to_sparse() const;
  /// Entry M[r][s]; zero outside the stencil.
  double entry(std::size_t r, std::size_t s) const;
};

/// M[r][s] = B(phi_s, phi_r) with
///   B(U, v) = eps (grad U, grad v) + (b U_x + c U, v + delta b v_x)
/// (delta ignored for Galerkin) and rhs[r] = (f, phi_r + delta b (phi_r)_x).
/// Cell matrices use a tensor Gauss rule of quad.order points; the load uses
/// the (optionally graded) per-cell rule. Cells are visited in row-major order.
AssembledSystem assemble(const ShishkinMesh& mesh, const CoefficientSet& coeffs, const StabilizationParam& stab,
                         const ScalarFunction& f, FormKind kind, QuadratureRule quad = {});

/// Direct sparse LU factorization of an assembled operator, shared by forward
/// and adjoint solves. Solutions satisfy ||M x - r||_2 <= 1e-10 ||r||_2 after
/// at most a few steps of iterative refinement; otherwise SolverError.
class LinearSolver {
 public:
  explicit LinearSolver(const AssembledSystem& system);
  ~LinearSolver();
  LinearSolver(LinearSolver&&) noexcept;
  LinearSolver& operator=(LinearSolver&&) noexcept;

  std::vector<double> solve(std::span<const double> rhs) const;
  std::vector<double> solve_transposed(std::span<const double> rhs) const;
  /// Relative residual of the last solve.
  double last_relative_residual() const { return last_residual_; }

  static constexpr double kResidualTolerance = 1e-10;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  mutable double last_residual_ = 0.0;
};

/// Solves the system and returns U in V^N.
DiscreteField solve(const ShishkinMesh& mesh, const AssembledSystem& system);

/// B(u, v) for arbitrary piecewise-smooth u, v by per-cell quadrature.
double bilinear_form(const ShishkinMesh& mesh, const CoefficientSet& coeffs, const StabilizationParam& stab,
                     const CellFunction& u, const CellFunction& v, const CellQuadrature& quad);

/// B(V, W) = W^T M V for V, W in V^N.
double bilinear_form(const AssembledSystem& system, const DiscreteField& v, const DiscreteField& w);

/// sum over cells of integral of g * w with the cell quadrature.
double integrate(const ShishkinMesh& mesh, const CellQuadrature& quad,
                 const std::function<double(CellIndex, double, double)>& integrand);

}  // namespace sdfem
