#include <arm_neon.h>

#include "whitney/kernels.hpp"

namespace whitney::kernels {
namespace {

// No gathers on NEON: pairs are loaded lane by lane and multiplied two at a
// time. Accumulation stays in pair order to match the reference.
void sparse_product_neon(const double* a, const double* b, const ProductPlan& plan,
                         std::size_t outputs, double* out) {
  const std::int32_t* lhs = plan.lhs.data();
  const std::int32_t* rhs = plan.rhs.data();
  const std::int32_t* off = plan.offsets.data();
  for (std::size_t k = 0; k < outputs; ++k) {
    double acc = 0.0;
    std::int32_t p = off[k];
    for (; p + 2 <= off[k + 1]; p += 2) {
      float64x2_t va = vdupq_n_f64(a[lhs[p]]);
      va = vsetq_lane_f64(a[lhs[p + 1]], va, 1);
      float64x2_t vb = vdupq_n_f64(b[rhs[p]]);
      vb = vsetq_lane_f64(b[rhs[p + 1]], vb, 1);
      const float64x2_t prod = vmulq_f64(va, vb);
      acc += vgetq_lane_f64(prod, 0);
      acc += vgetq_lane_f64(prod, 1);
    }
    for (; p < off[k + 1]; ++p) acc += a[lhs[p]] * b[rhs[p]];
    out[k] = acc;
  }
}

void axpy_neon(double alpha, const double* x, double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(alpha);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(y + i, vaddq_f64(vld1q_f64(y + i), vmulq_f64(va, vld1q_f64(x + i))));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

double dot_neon(const double* x, const double* y, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(x + i), vld1q_f64(y + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(x + i + 2), vld1q_f64(y + i + 2));
  }
  double acc = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

}  // namespace

const KernelTable& neon_kernels() {
  static const KernelTable table{"neon", &sparse_product_neon, &axpy_neon, &dot_neon};
  return table;
}

}  // namespace whitney::kernels
