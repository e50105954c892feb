#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sdfem/fem.hpp"
#include "sdfem/field.hpp"
#include "sdfem/region.hpp"

namespace sdfem {

enum class NormKind { L1, L2, LinfNodes, LinfSampled, W1infSampled, Energy };
/// Which part of the jet is measured. Gradient combines both derivatives:
/// |v_x| + |v_y| under L1, sqrt(v_x^2 + v_y^2) under L2 and max(|v_x|, |v_y|)
/// under the sup norms.
enum class Quantity { Value, Dx, Dy, Gradient };

std::string_view to_string(NormKind k);
std::string_view to_string(Quantity q);

struct NormOptions {
  int sampling = 5;          // equispaced points per direction and cell, corners included
  QuadratureRule quad{5, true};
};

struct NormReport {
  double value = 0.0;
  std::string region;
  NormKind kind = NormKind::L2;
  Quantity quantity = Quantity::Value;
  int sampling = 0;  // points per cell direction for sampled norms, 0 otherwise
};

/// Norm of `f` over a union of whole cells. L1/L2 use the cell quadrature,
/// LinfSampled / W1infSampled dense equispaced sampling and LinfNodes the
/// cell corners. W1infSampled is the sum of the sups of v, v_x and v_y.
/// The energy norm needs the problem data; use energy_norm for it.
NormReport region_norm(const ShishkinMesh& mesh, const CellFunction& f, const CellRegion& region, NormKind kind,
                       Quantity quantity = Quantity::Value, const NormOptions& options = {});

struct EnergyParts {
  double streamline = 0.0;  // ((eps + b^2 delta) v_x, v_x)
  double crosswind = 0.0;   // eps (v_y, v_y)
  double reaction = 0.0;    // (c v, v)
  double squared() const { return streamline + crosswind + reaction; }
};

EnergyParts energy_parts(const ShishkinMesh& mesh, const CoefficientSet& coeffs, const StabilizationParam& stab,
                         const CellFunction& v, const CellRegion& region, const QuadratureRule& quad = {5, true});

/// |||v||| over the whole domain.
double energy_norm(const ShishkinMesh& mesh, const CoefficientSet& coeffs, const StabilizationParam& stab,
                   const CellFunction& v, const QuadratureRule& quad = {5, true});
double energy_norm(const ShishkinMesh& mesh, const CoefficientSet& coeffs, const StabilizationParam& stab,
                   const DiscreteField& v, const QuadratureRule& quad = {5, true});

/// max |U - u| over the mesh nodes of the closed region Omega_s u Omega_1,
/// i.e. nodes with lambda_y <= y <= 1 - lambda_y.
double nodal_error_smooth_and_layer(const DiscreteField& U, const ManufacturedProblem& problem);

/// Sampled ||u - u^I||_inf on Omega_s and on its complement, in that order.
std::vector<NormReport> interp_error_table(const ManufacturedProblem& problem, const ShishkinMesh& mesh,
                                           const NormOptions& options = {});

/// Negated least-squares slope of log(error / ln^p N) against log N. Throws
/// ConfigError for fewer than two points, repeated N, or errors <= 0.
double fit_rate(std::span<const std::pair<double, double>> samples, double ln_power);

}  // namespace sdfem
