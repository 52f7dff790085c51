#include "whitney/kernels.hpp"

namespace whitney::kernels {
namespace {

void sparse_product_scalar(const double* a, const double* b, const ProductPlan& plan,
                           std::size_t outputs, double* out) {
  const std::int32_t* lhs = plan.lhs.data();
  const std::int32_t* rhs = plan.rhs.data();
  const std::int32_t* off = plan.offsets.data();
  for (std::size_t k = 0; k < outputs; ++k) {
    double acc = 0.0;
    for (std::int32_t p = off[k]; p < off[k + 1]; ++p) {
      acc += a[lhs[p]] * b[rhs[p]];
    }
    out[k] = acc;
  }
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

double dot_scalar(const double* x, const double* y, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{"scalar", &sparse_product_scalar, &axpy_scalar, &dot_scalar};
  return table;
}

}  // namespace whitney::kernels
