#pragma once

#include <array>
#include <string_view>

#include "sdfem/fem.hpp"
#include "sdfem/field.hpp"
#include "sdfem/norms.hpp"
#include "sdfem/region.hpp"

namespace sdfem {

struct GreenConfig {
  NodeIndex node;    // x*, an interior mesh node
  double k = 2.0;    // sigma constant
  double K = 2.0;    // width constant of Omega_0

  /// sigma_x = k N^{-1} ln N.
  double sigma_x(int n) const;
  /// sigma_y = k N^{-1/2}.
  double sigma_y(int n) const;
  /// Throws ConfigError unless k, K > 0 and DomainError unless the node is interior.
  void validate(const ShishkinMesh& mesh) const;
};

/// Interior node closest to (x, y).
NodeIndex nearest_interior_node(const ShishkinMesh& mesh, double x, double y);

/// Cells meeting Omega_0 = {x - x* <= K sigma_x ln N, |y - y*| <= K sigma_y ln N}
/// in a set of positive measure.
CellRegion omega0_prime(const ShishkinMesh& mesh, const GreenConfig& config);

struct GreenField {
  DiscreteField G;
  GreenConfig config;
  CellRegion omega0_prime;
  double epsilon = 0.0;
  /// max_i |B(phi_i, G) - [i == i*]|.
  double residual = 0.0;
};

/// Solves B(v, G) = v(x*) for all v in V^N, i.e. M^T G = e_{x*}.
GreenField solve_green(const ShishkinMesh& mesh, const CoefficientSet& coeffs, const AssembledSystem& system,
                       const LinearSolver& solver, const GreenConfig& config);
/// Assembles the SDFEM operator itself (forcing irrelevant) and solves.
GreenField solve_green(const ShishkinMesh& mesh, const CoefficientSet& coeffs, const StabilizationParam& stab,
                       const GreenConfig& config, QuadratureRule quad = {});

/// Sampled sups of G, G_x and G_y over region \ Omega_0' (outside) and the
/// weighted combination bounded in the pointwise decay estimates:
///   Omega_s        : ||G|| + ||G_x|| + ||G_y||
///   Omega_1, 12    : ||G|| + eps (||G_x|| + ||G_y||)
///   Omega_2        : eps^{1/4} ||G|| + eps^{1/4} ||G_x|| + eps^{3/4} ||G_y||
/// `weighted_inside` applies the same weights over region n Omega_0', or over
/// all of Omega_0' when the region does not meet it; it is the reference
/// scale next to x*.
struct DecayReport {
  Subdomain region = Subdomain::OmegaS;
  bool empty = false;  // region \ Omega_0' contains no cell
  std::array<double, 3> outside{};  // sup |G|, |G_x|, |G_y|
  std::array<double, 3> weights{};
  double weighted_outside = 0.0;
  double weighted_inside = 0.0;
  bool inside_is_family = false;  // weighted_inside measured on region n Omega_0'
  int sampling = 0;
};

DecayReport green_decay_profile(const GreenField& gfield, Subdomain region, int sampling = 5);

enum class ConvectionCase { OmegaPrimeInSmoothOrLayer, OmegaPrimeCrossesCharacteristic };
std::string_view to_string(ConvectionCase c);

/// Case 1 when Omega_0' lies in Omega_s u Omega_1, case 2 otherwise.
ConvectionCase convection_case(const ShishkinMesh& mesh, const GreenField& gfield);

struct ErrorSplit {
  double term1 = 0.0;   // -eps (Lap u, delta b G_x)
  double term2 = 0.0;   // B(u - u^I, G)
  double sum = 0.0;
  double direct = 0.0;  // (U - u)(x*)
  double mismatch() const;
};

ErrorSplit error_split_terms(const ManufacturedProblem& problem, const ShishkinMesh& mesh,
                             const StabilizationParam& stab, const DiscreteField& U, const GreenField& gfield,
                             QuadratureRule quad = {6, true});

/// Predicted envelopes with C = 1.
struct Envelopes {
  double green_energy_sq = 0.0;  // N ln N
  double bilinear = 0.0;         // (N^{-9/4} + eps^{1/4} N^{-2}) ln^3 N |||G|||
  double convection = 0.0;       // case-dependent bound on |(eps Lap u, delta b G_x)|
  ConvectionCase convection_case = ConvectionCase::OmegaPrimeInSmoothOrLayer;
};

/// delta_y in the case-2 bound is read as C*/N, the weight on Omega_2.
Envelopes predicted_envelopes(const ShishkinMesh& mesh, const CoefficientSet& coeffs, const StabilizationParam& stab,
                              const GreenField& gfield, double green_energy);

/// Left-hand sides of the local estimates on Omega_s n Omega_0':
///   a[k] = ||(E_k - E_k^I)_x||_L1 for E1, E2, E12,
///   b    = ||((E1 + E12) - (E1 + E12)^I)_y||_L1,
///   c    = ||Lap(E1 + E12)||_L1.
struct LocalEstimates {
  std::array<double, 3> a{};
  double b = 0.0;
  double c = 0.0;
  double bound_ab = 0.0;  // N^{-rho} sigma_y ln N
  double bound_c = 0.0;   // eps^{-1} N^{-rho} sigma_y ln N
  bool empty = false;
};

LocalEstimates local_estimates(const ManufacturedProblem& problem, const ShishkinMesh& mesh,
                               const GreenConfig& config, QuadratureRule quad = {6, true});

}  // namespace sdfem
