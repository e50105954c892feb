#include <algorithm>
#include <cmath>

#include "sdfem/kernels/kernels.hpp"

namespace sdfem::kernels::scalar {
namespace {

double weighted_sum(const double* w, const double* a, std::size_t n) {
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) s += w[k] * a[k];
  return s;
}

double weighted_abs_sum(const double* w, const double* a, std::size_t n) {
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) s += w[k] * std::fabs(a[k]);
  return s;
}

double weighted_sq_sum(const double* w, const double* a, std::size_t n) {
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) s += w[k] * a[k] * a[k];
  return s;
}

double weighted_dot(const double* w, const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) s += w[k] * a[k] * b[k];
  return s;
}

double max_abs(const double* a, std::size_t n) {
  double m = 0.0;
  for (std::size_t k = 0; k < n; ++k) m = std::max(m, std::fabs(a[k]));
  return m;
}

void stencil9_apply(const Stencil9View& op, const double* xp, double* y) {
  const std::size_t n = op.n;
  const std::size_t rows = n * n;
  const double* x = xp + stencil_padding(n);
  const std::ptrdiff_t sn = static_cast<std::ptrdiff_t>(n);
  const std::array<std::ptrdiff_t, 9> offset{-sn - 1, -sn, -sn + 1, -1, 0, 1, sn - 1, sn, sn + 1};
  for (std::size_t r = 0; r < rows; ++r) {
    double acc = 0.0;
    for (std::size_t d = 0; d < 9; ++d) {
      acc += op.coeff[d][r] * x[static_cast<std::ptrdiff_t>(r) + offset[d]];
    }
    y[r] = acc;
  }
}

}  // namespace

const Table kTable{weighted_sum, weighted_abs_sum, weighted_sq_sum, weighted_dot, max_abs, stencil9_apply};

}  // namespace sdfem::kernels::scalar
