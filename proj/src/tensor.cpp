#include "whitney/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace whitney {

double norm2(const RealTensor& t) {
  double s = 0.0;
  for (double v : t.flat()) s += v * v;
  return s;
}

double max_abs_diff(const RealTensor& a, const RealTensor& b) {
  if (a.size() != b.size()) fail(ErrorKind::kInvalidArgument, "tensor shapes differ");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.flat()[i] - b.flat()[i]));
  return m;
}

double symmetry_defect(const RealTensor& a) {
  const int n = a.dim();
  double worst = 0.0;
  for (int m = 0; m < n; ++m)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double v = a(m, i, j);
        worst = std::max({worst, std::abs(v - a(m, j, i)), std::abs(v - a(i, m, j)),
                          std::abs(v - a(i, j, m)), std::abs(v - a(j, m, i)),
                          std::abs(v - a(j, i, m))});
      }
  return worst;
}

CubicSymTensor::CubicSymTensor(RealTensor data, double tol) : data_(std::move(data)) {
  if (data_.rank() != 3) fail(ErrorKind::kInvalidArgument, "cubic tensor must have rank 3");
  const double defect = whitney::symmetry_defect(data_);
  if (defect > tol) {
    fail(ErrorKind::kSymmetryViolation,
         "array is not tri-symmetric (defect " + std::to_string(defect) + ")");
  }
}

CubicSymTensor CubicSymTensor::symmetrized(const RealTensor& raw) {
  const int n = raw.dim();
  CubicSymTensor out(n);
  for (int m = 0; m < n; ++m)
    for (int i = m; i < n; ++i)
      for (int j = i; j < n; ++j) {
        const double v = (raw(m, i, j) + raw(m, j, i) + raw(i, m, j) + raw(i, j, m) +
                          raw(j, m, i) + raw(j, i, m)) / 6.0;
        out.set(m, i, j, v);
      }
  return out;
}

void CubicSymTensor::set(int m, int i, int j, double v) {
  data_(m, i, j) = v;
  data_(m, j, i) = v;
  data_(i, m, j) = v;
  data_(i, j, m) = v;
  data_(j, m, i) = v;
  data_(j, i, m) = v;
}

double CubicSymTensor::norm2() const { return whitney::norm2(data_); }

double CubicSymTensor::symmetry_defect() const { return whitney::symmetry_defect(data_); }

std::vector<double> CubicSymTensor::trace() const {
  const int n = dim();
  std::vector<double> t(n, 0.0);
  for (int m = 0; m < n; ++m)
    for (int i = 0; i < n; ++i) t[m] += data_(m, i, i);
  return t;
}

double VectorField1::norm2() const {
  double s = 0.0;
  for (double x : v_) s += x * x;
  return s;
}

SymTraceFree2::SymTraceFree2(RealTensor data, double tol) : data_(std::move(data)) {
  if (data_.rank() != 2) fail(ErrorKind::kInvalidArgument, "2-tensor must have rank 2");
  if (asymmetry() > tol) fail(ErrorKind::kSymmetryViolation, "2-tensor is not symmetric");
  if (std::abs(trace()) > tol) fail(ErrorKind::kSymmetryViolation, "2-tensor is not trace-free");
}

double SymTraceFree2::norm2() const { return whitney::norm2(data_); }

double SymTraceFree2::trace() const {
  double t = 0.0;
  for (int i = 0; i < dim(); ++i) t += data_(i, i);
  return t;
}

double SymTraceFree2::asymmetry() const {
  double worst = 0.0;
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j) worst = std::max(worst, std::abs(data_(i, j) - data_(j, i)));
  return worst;
}

}  // namespace whitney
