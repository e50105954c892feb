#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sdfem/green.hpp"
#include "sdfem/problem.hpp"

namespace sdfem {

/// A Green's function probe, given as a point snapped to the nearest interior node.
struct ProbeSpec {
  double x = 0.5;
  double y = 0.5;
  double k = 2.0;
  double K = 2.0;
};

struct StudySpec {
  std::vector<double> epsilons{1e-6};
  std::vector<int> n_list{24, 48, 96};
  double b = 1.0;
  double c = 1.0;
  double beta = 1.0;
  double rho = 2.5;
  double c_star = 1.0;
  int quad_order = 3;        // assembly
  int norm_quad_order = 6;   // norms and error-split integrals
  bool graded_quadrature = true;
  int sampling = 5;
  Benchmark benchmark = Benchmark::Layers;
  std::vector<ProbeSpec> probes{ProbeSpec{}};
  std::string format = "csv";
  std::string out;  // empty: standard output

  /// Throws ConfigError on empty lists, N not divisible by 6, eps outside (0, 1) ...
  void validate() const;
};

/// Parses `key = value` lines; '#' starts a comment. Keys:
///   epsilon, n_list (comma lists), b, c, beta, rho, c_star, quad_order,
///   norm_quad_order, graded_quadrature, sampling, benchmark, green_node
///   ("x,y" pairs separated by ';'), green_k, green_K, format, out.
/// Unknown keys and malformed values raise ConfigError naming the line.
StudySpec parse_study_config(std::string_view text, StudySpec base = {});
StudySpec load_study_config(const std::string& path, StudySpec base = {});

inline constexpr std::array<std::string_view, 7> kMetricNames{
    "interp_inf_omega_s", "interp_inf_rest", "energy_uI_U", "nodal_inf_s1",
    "green_energy_sq",    "term1_eps_delta", "term2_BeG"};

/// Powers of ln N divided out before rate fitting, per metric.
inline constexpr std::array<double, 7> kMetricLnPowers{0.0, 2.0, 2.0, 3.0, 1.0, 1.0, 3.0};

struct ProbeReport {
  NodeIndex node;
  double x = 0, y = 0;
  ConvectionCase convection = ConvectionCase::OmegaPrimeInSmoothOrLayer;
  double green_energy_sq = 0.0;
  double residual = 0.0;
  ErrorSplit split;
  Envelopes envelopes;
};

struct StudyRow {
  double epsilon = 0.0;
  int n = 0;
  std::array<double, 7> metrics{};  // ordered as kMetricNames; probe columns use the first probe
  std::array<std::optional<double>, 7> pair_rates{};
  std::vector<ProbeReport> probes;
};

struct RateRow {
  double epsilon = 0.0;
  std::array<std::optional<double>, 7> rates{};  // least squares over the epsilon group
};

struct ConvergenceTable {
  std::vector<StudyRow> rows;       // ordered by (epsilon as given, N as given)
  std::vector<RateRow> rate_rows;   // one per epsilon
};

/// Computes every row. Errors are rethrown with the (eps, N) context.
ConvergenceTable run_study(const StudySpec& spec);

/// One (eps, N) case.
StudyRow run_case(const StudySpec& spec, double epsilon, int n);

/// csv or markdown; throws ConfigError for other formats or an empty table.
std::string emit(const ConvergenceTable& table, std::string_view format);
/// Per-probe details (node, case, split terms, envelopes) as csv.
std::string emit_probes(const ConvergenceTable& table);

/// `v` with 10 significant digits in scientific notation.
std::string format_number(double v);

}  // namespace sdfem
