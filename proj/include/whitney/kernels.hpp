#pragma once

// Data-parallel inner loops behind the jet arithmetic and the quadrature
// reductions. Every kernel has a scalar reference implementation; SIMD
// variants (AVX2+FMA on x86-64, NEON on aarch64) are selected at runtime
// when the host supports them. WHITNEY_KERNELS=scalar|avx2|neon overrides
// the choice.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace whitney::kernels {

// Sparse bilinear product plan: out[k] = sum_{p in [offsets[k], offsets[k+1])}
// a[lhs[p]] * b[rhs[p]]. Pairs for one output are stored contiguously.
struct ProductPlan {
  std::vector<std::int32_t> lhs;
  std::vector<std::int32_t> rhs;
  std::vector<std::int32_t> offsets;  // size = outputs + 1
};

struct KernelTable {
  std::string_view name;

  // Evaluates the first `outputs` entries of a ProductPlan. Products are
  // accumulated in pair order, so every variant must agree bit-for-bit with
  // the scalar reference.
  void (*sparse_product)(const double* a, const double* b, const ProductPlan& plan,
                         std::size_t outputs, double* out);

  // y[i] += alpha * x[i]
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);

  // sum_i x[i] * y[i]; lane-wise accumulation, so SIMD variants agree with
  // the reference only to rounding.
  double (*dot)(const double* x, const double* y, std::size_t n);
};

const KernelTable& scalar_kernels();
#if defined(WHITNEY_BUILD_AVX2)
const KernelTable& avx2_kernels();
#endif
#if defined(WHITNEY_BUILD_NEON)
const KernelTable& neon_kernels();
#endif

// Kernel tables compiled in and supported by the running CPU, scalar first.
std::vector<const KernelTable*> available();

// The table used by the library. Chosen once on first use.
const KernelTable& active();

// Force a specific table by name; returns false if it is unavailable.
// Intended for tests and benchmarking.
bool select(std::string_view name);

// Pairwise (cascade) weighted sum  sum_i w[i] * f[i]. Deterministic for a
// fixed kernel table; leaves of at most 64 entries go through `dot`.
double pairwise_dot(std::span<const double> w, std::span<const double> f);

}  // namespace whitney::kernels
