// NEON (AArch64 Advanced SIMD) variants, two doubles per register. NEON is
// mandatory on AArch64 so no runtime feature check is needed.

#include <arm_neon.h>

#include <algorithm>
#include <cmath>

#include "sdfem/kernels/kernels.hpp"

namespace sdfem::kernels::neon {
namespace {

inline double hsum(float64x2_t v) { return vgetq_lane_f64(v, 0) + vgetq_lane_f64(v, 1); }

double weighted_sum(const double* w, const double* a, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0), acc1 = vdupq_n_f64(0.0);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(w + k), vld1q_f64(a + k));
    acc1 = vfmaq_f64(acc1, vld1q_f64(w + k + 2), vld1q_f64(a + k + 2));
  }
  double s = hsum(vaddq_f64(acc0, acc1));
  for (; k < n; ++k) s += w[k] * a[k];
  return s;
}

double weighted_abs_sum(const double* w, const double* a, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0), acc1 = vdupq_n_f64(0.0);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(w + k), vabsq_f64(vld1q_f64(a + k)));
    acc1 = vfmaq_f64(acc1, vld1q_f64(w + k + 2), vabsq_f64(vld1q_f64(a + k + 2)));
  }
  double s = hsum(vaddq_f64(acc0, acc1));
  for (; k < n; ++k) s += w[k] * std::fabs(a[k]);
  return s;
}

double weighted_sq_sum(const double* w, const double* a, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0), acc1 = vdupq_n_f64(0.0);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const float64x2_t a0 = vld1q_f64(a + k), a1 = vld1q_f64(a + k + 2);
    acc0 = vfmaq_f64(acc0, vmulq_f64(vld1q_f64(w + k), a0), a0);
    acc1 = vfmaq_f64(acc1, vmulq_f64(vld1q_f64(w + k + 2), a1), a1);
  }
  double s = hsum(vaddq_f64(acc0, acc1));
  for (; k < n; ++k) s += w[k] * a[k] * a[k];
  return s;
}

double weighted_dot(const double* w, const double* a, const double* b, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0), acc1 = vdupq_n_f64(0.0);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    acc0 = vfmaq_f64(acc0, vmulq_f64(vld1q_f64(w + k), vld1q_f64(a + k)), vld1q_f64(b + k));
    acc1 = vfmaq_f64(acc1, vmulq_f64(vld1q_f64(w + k + 2), vld1q_f64(a + k + 2)), vld1q_f64(b + k + 2));
  }
  double s = hsum(vaddq_f64(acc0, acc1));
  for (; k < n; ++k) s += w[k] * a[k] * b[k];
  return s;
}

double max_abs(const double* a, std::size_t n) {
  float64x2_t m = vdupq_n_f64(0.0);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) m = vmaxq_f64(m, vabsq_f64(vld1q_f64(a + k)));
  double s = std::max(vgetq_lane_f64(m, 0), vgetq_lane_f64(m, 1));
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
  for (; r + 2 <= rows; r += 2) {
    float64x2_t acc = vdupq_n_f64(0.0);
    for (std::size_t d = 0; d < 9; ++d) {
      acc = vfmaq_f64(acc, vld1q_f64(op.coeff[d] + r), vld1q_f64(x + static_cast<std::ptrdiff_t>(r) + offset[d]));
    }
    vst1q_f64(y + r, acc);
  }
  for (; r < rows; ++r) {
    double acc = 0.0;
    for (std::size_t d = 0; d < 9; ++d) acc += op.coeff[d][r] * x[static_cast<std::ptrdiff_t>(r) + offset[d]];
    y[r] = acc;
  }
}

}  // namespace

const Table kTable{weighted_sum, weighted_abs_sum, weighted_sq_sum, weighted_dot, max_abs, stencil9_apply};

}  // namespace sdfem::kernels::neon
