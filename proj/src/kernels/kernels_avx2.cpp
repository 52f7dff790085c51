// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.
#include <immintrin.h>

#include <vector>

#include "whitney/kernels.hpp"

namespace whitney::kernels {
namespace {

// Products are formed four pairs at a time with gathers, then reduced per
// output in pair order so the result matches the scalar reference exactly.
void sparse_product_avx2(const double* a, const double* b, const ProductPlan& plan,
                         std::size_t outputs, double* out) {
  if (outputs == 0) return;
  const std::int32_t* lhs = plan.lhs.data();
  const std::int32_t* rhs = plan.rhs.data();
  const std::int32_t* off = plan.offsets.data();
  const std::int32_t total = off[outputs];

  thread_local std::vector<double> products;
  if (products.size() < static_cast<std::size_t>(total)) products.resize(total);
  double* prod = products.data();

  std::int32_t p = 0;
  for (; p + 4 <= total; p += 4) {
    const __m128i il = _mm_loadu_si128(reinterpret_cast<const __m128i*>(lhs + p));
    const __m128i ir = _mm_loadu_si128(reinterpret_cast<const __m128i*>(rhs + p));
    const __m256d va = _mm256_i32gather_pd(a, il, 8);
    const __m256d vb = _mm256_i32gather_pd(b, ir, 8);
    _mm256_storeu_pd(prod + p, _mm256_mul_pd(va, vb));
  }
  for (; p < total; ++p) prod[p] = a[lhs[p]] * b[rhs[p]];

  for (std::size_t k = 0; k < outputs; ++k) {
    double acc = 0.0;
    for (std::int32_t q = off[k]; q < off[k + 1]; ++q) acc += prod[q];
    out[k] = acc;
  }
}

void axpy_avx2(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vy = _mm256_loadu_pd(y + i);
    const __m256d vx = _mm256_loadu_pd(x + i);
    // mul + add rather than fma: keeps axpy bit-identical to the reference
    _mm256_storeu_pd(y + i, _mm256_add_pd(vy, _mm256_mul_pd(va, vx)));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

double dot_avx2(const double* x, const double* y, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
  }
  acc0 = _mm256_add_pd(acc0, acc1);
  const __m128d lo = _mm256_castpd256_pd128(acc0);
  const __m128d hi = _mm256_extractf128_pd(acc0, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  double acc = _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
  for (; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

}  // namespace

const KernelTable& avx2_kernels() {
  static const KernelTable table{"avx2", &sparse_product_avx2, &axpy_avx2, &dot_avx2};
  return table;
}

}  // namespace whitney::kernels
