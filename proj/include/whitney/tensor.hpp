#pragma once

// Dense frame-indexed arrays (every index runs over 0..n-1) and the
// strongly-typed tensors of a Lagrangian second fundamental form.

#include <array>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "whitney/error.hpp"

namespace whitney {

inline constexpr int kMaxDim = 8;

template <class T>
class Tensor {
 public:
  Tensor() = default;
  Tensor(int n, int rank, const T& fill = T{}) : n_(n), rank_(rank) {
    std::size_t size = 1;
    for (int r = 0; r < rank; ++r) size *= static_cast<std::size_t>(n);
    data_.assign(size, fill);
  }

  int dim() const { return n_; }
  int rank() const { return rank_; }
  std::size_t size() const { return data_.size(); }

  template <class... I>
  T& operator()(I... idx) { return data_[offset({static_cast<int>(idx)...})]; }
  template <class... I>
  const T& operator()(I... idx) const { return data_[offset({static_cast<int>(idx)...})]; }

  T& at(std::span<const int> idx) { return data_[offset(idx)]; }
  const T& at(std::span<const int> idx) const { return data_[offset(idx)]; }

  std::span<T> flat() { return data_; }
  std::span<const T> flat() const { return data_; }

  // Multi-index for a flat position.
  std::array<int, kMaxDim> unflatten(std::size_t pos) const {
    std::array<int, kMaxDim> idx{};
    for (int r = rank_ - 1; r >= 0; --r) {
      idx[r] = static_cast<int>(pos % static_cast<std::size_t>(n_));
      pos /= static_cast<std::size_t>(n_);
    }
    return idx;
  }

 private:
  std::size_t offset(std::initializer_list<int> idx) const {
    return offset(std::span<const int>(idx.begin(), idx.size()));
  }
  std::size_t offset(std::span<const int> idx) const {
    std::size_t off = 0;
    for (int i : idx) off = off * static_cast<std::size_t>(n_) + static_cast<std::size_t>(i);
    return off;
  }

  int n_ = 0;
  int rank_ = 0;
  std::vector<T> data_;
};

using RealTensor = Tensor<double>;

// Fully symmetric rank-3 array a[m][i][j]; houses h^{m*}_{ij}, its trace-free
// part and the c-tensor built from H.
class CubicSymTensor {
 public:
  CubicSymTensor() = default;
  explicit CubicSymTensor(int n) : data_(n, 3) {}
  // Validates full symmetry to `tol` (absolute); throws kSymmetryViolation.
  explicit CubicSymTensor(RealTensor data, double tol = 1e-9);

  // Averages over all six index permutations.
  static CubicSymTensor symmetrized(const RealTensor& raw);

  int dim() const { return data_.dim(); }
  double operator()(int m, int i, int j) const { return data_(m, i, j); }
  // Writes all six permuted entries.
  void set(int m, int i, int j, double v);
  const RealTensor& raw() const { return data_; }

  double norm2() const;
  // Largest deviation from full symmetry.
  double symmetry_defect() const;
  // sum_i a[m][i][i] for each m.
  std::vector<double> trace() const;

 private:
  RealTensor data_;
};

double symmetry_defect(const RealTensor& a);

// H^{k*}: normal vector expressed in the Je_k frame.
class VectorField1 {
 public:
  VectorField1() = default;
  explicit VectorField1(int n) : v_(n, 0.0) {}
  explicit VectorField1(std::vector<double> v) : v_(std::move(v)) {}

  int dim() const { return static_cast<int>(v_.size()); }
  double operator[](int k) const { return v_[k]; }
  double& operator[](int k) { return v_[k]; }
  std::span<const double> values() const { return v_; }
  double norm2() const;

 private:
  std::vector<double> v_;
};

// Symmetric, trace-free 2-tensor T_ij.
class SymTraceFree2 {
 public:
  SymTraceFree2() = default;
  explicit SymTraceFree2(int n) : data_(n, 2) {}
  // Validates symmetry and vanishing trace to `tol`.
  explicit SymTraceFree2(RealTensor data, double tol = 1e-9);

  int dim() const { return data_.dim(); }
  double operator()(int i, int j) const { return data_(i, j); }
  const RealTensor& raw() const { return data_; }
  double norm2() const;
  double trace() const;
  double asymmetry() const;

 private:
  RealTensor data_;
};

double norm2(const RealTensor& t);
double max_abs_diff(const RealTensor& a, const RealTensor& b);

}  // namespace whitney
