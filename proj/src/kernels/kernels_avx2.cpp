// AVX2 + FMA variants. Built with -mavx2 -mfma; only reached through the
// dispatcher after a CPU feature check.

#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "sdfem/kernels/kernels.hpp"

namespace sdfem::kernels::avx2 {
namespace {

inline __m256d abs_pd(__m256d v) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v); }

// Lanes are added as ((l0 + l1) + (l2 + l3)) so the result is reproducible.
inline double hsum(__m256d v) {
  alignas(32) double lane[4];
  _mm256_store_pd(lane, v);
  return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

inline double hmax(__m256d v) {
  alignas(32) double lane[4];
  _mm256_store_pd(lane, v);
  return std::max(std::max(lane[0], lane[1]), std::max(lane[2], lane[3]));
}

double weighted_sum(const double* w, const double* a, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 8 <= n; k += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(w + k), _mm256_loadu_pd(a + k), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(w + k + 4), _mm256_loadu_pd(a + k + 4), acc1);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; k < n; ++k) s += w[k] * a[k];
  return s;
}

double weighted_abs_sum(const double* w, const double* a, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 8 <= n; k += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(w + k), abs_pd(_mm256_loadu_pd(a + k)), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(w + k + 4), abs_pd(_mm256_loadu_pd(a + k + 4)), acc1);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; k < n; ++k) s += w[k] * std::fabs(a[k]);
  return s;
}

double weighted_sq_sum(const double* w, const double* a, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 8 <= n; k += 8) {
    const __m256d a0 = _mm256_loadu_pd(a + k);
    const __m256d a1 = _mm256_loadu_pd(a + k + 4);
    acc0 = _mm256_fmadd_pd(_mm256_mul_pd(_mm256_loadu_pd(w + k), a0), a0, acc0);
    acc1 = _mm256_fmadd_pd(_mm256_mul_pd(_mm256_loadu_pd(w + k + 4), a1), a1, acc1);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; k < n; ++k) s += w[k] * a[k] * a[k];
  return s;
}

double weighted_dot(const double* w, const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 8 <= n; k += 8) {
    const __m256d wa0 = _mm256_mul_pd(_mm256_loadu_pd(w + k), _mm256_loadu_pd(a + k));
    const __m256d wa1 = _mm256_mul_pd(_mm256_loadu_pd(w + k + 4), _mm256_loadu_pd(a + k + 4));
    acc0 = _mm256_fmadd_pd(wa0, _mm256_loadu_pd(b + k), acc0);
    acc1 = _mm256_fmadd_pd(wa1, _mm256_loadu_pd(b + k + 4), acc1);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; k < n; ++k) s += w[k] * a[k] * b[k];
  return s;
}

double max_abs(const double* a, std::size_t n) {
  __m256d m = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) m = _mm256_max_pd(m, abs_pd(_mm256_loadu_pd(a + k)));
  double s = hmax(m);
  for (; k < n; ++k) s = std::max(s, std::fabs(a[k]));
  return s;
}

void stencil9_apply(const Stencil9View& op, const double* xp, double* y) {
  const std::size_t n = op.n;
  const std::size_t rows = n * n;
  const double* x = xp + stencil_padding(n);
  const std::ptrdiff_t sn = static_cast<std::ptrdiff_t>(n);
  const std::ptrdiff_t offset[9] = {-sn - 1, -sn, -sn + 1, -1, 0, 1, sn - 1, sn, sn + 1};
  std::size_t r = 0;
  for (; r + 4 <= rows; r += 4) {
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t d = 0; d < 9; ++d) {
      const double* xs = x + static_cast<std::ptrdiff_t>(r) + offset[d];
      acc = _mm256_fmadd_pd(_mm256_loadu_pd(op.coeff[d] + r), _mm256_loadu_pd(xs), acc);
    }
    _mm256_storeu_pd(y + r, acc);
  }
  for (; r < rows; ++r) {
    double acc = 0.0;
    for (std::size_t d = 0; d < 9; ++d) acc += op.coeff[d][r] * x[static_cast<std::ptrdiff_t>(r) + offset[d]];
    y[r] = acc;
  }
}

}  // namespace

bool cpu_supported() {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

const Table kTable{weighted_sum, weighted_abs_sum, weighted_sq_sum, weighted_dot, max_abs, stencil9_apply};

}  // namespace sdfem::kernels::avx2
