#pragma once

// Data-parallel inner loops used by the quadrature reductions and by the
// structured 9-point operator. Each kernel has a scalar reference version and
// SIMD variants (AVX2+FMA on x86-64, NEON on AArch64); the variant is chosen
// once at startup from the CPU features and can be overridden for testing.
//
// Reductions are deterministic for a fixed backend: lane partial sums are
// combined in a fixed order. Different backends agree to rounding level only.

#include <array>
#include <cstddef>
#include <span>
#include <string_view>

namespace sdfem::kernels {

enum class Backend { Scalar, Avx2, Neon };

std::string_view to_string(Backend b);

/// True when the variant was compiled in and the running CPU supports it.
bool available(Backend b);
Backend active_backend();
/// Throws ConfigError if the backend is not available.
void set_backend(Backend b);

/// 9-point operator on an n x n grid of interior unknowns, row-major
/// (index = jj * n + ii). Coefficient d = (dj + 1) * 3 + (di + 1) multiplies
/// the neighbour (ii + di, jj + dj); coefficients reaching outside the grid
/// must be zero.
struct Stencil9View {
  std::size_t n = 0;
  std::array<const double*, 9> coeff{};
};

/// Padding each side of the input vector expected by stencil9_apply.
inline std::size_t stencil_padding(std::size_t n) { return n + 1; }

// sum w[k] * a[k]
double weighted_sum(std::span<const double> w, std::span<const double> a);
// sum w[k] * |a[k]|
double weighted_abs_sum(std::span<const double> w, std::span<const double> a);
// sum w[k] * a[k]^2
double weighted_sq_sum(std::span<const double> w, std::span<const double> a);
// sum w[k] * a[k] * b[k]
double weighted_dot(std::span<const double> w, std::span<const double> a, std::span<const double> b);
// max |a[k]|, 0 for empty input
double max_abs(std::span<const double> a);

/// y = A x, where x_padded holds x at offset stencil_padding(n) with
/// stencil_padding(n) finite values on each side.
void stencil9_apply(const Stencil9View& op, std::span<const double> x_padded, std::span<double> y);

// Direct entry points into each variant, for equivalence tests.
struct Table {
  double (*weighted_sum)(const double*, const double*, std::size_t);
  double (*weighted_abs_sum)(const double*, const double*, std::size_t);
  double (*weighted_sq_sum)(const double*, const double*, std::size_t);
  double (*weighted_dot)(const double*, const double*, const double*, std::size_t);
  double (*max_abs)(const double*, std::size_t);
  void (*stencil9_apply)(const Stencil9View&, const double*, double*);
};

/// Table of the given backend; throws ConfigError if not available.
const Table& table(Backend b);

namespace scalar {
extern const Table kTable;
}
namespace avx2 {
extern const Table kTable;
bool cpu_supported();
}
namespace neon {
extern const Table kTable;
}

}  // namespace sdfem::kernels
