#pragma once

// Truncated multivariate Taylor polynomials ("jets").
//
// A Jet of order K in n variables stores the Taylor coefficients
// c_alpha, |alpha| <= K, of a smooth function around a base point, so
// d^alpha f = alpha! * c_alpha. Arithmetic and elementary functions act on
// the coefficients exactly, which gives forward-mode derivatives of every
// order up to K at machine precision. Mixed-order arithmetic truncates to
// the lower order.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "whitney/error.hpp"
#include "whitney/kernels.hpp"

namespace whitney {

inline constexpr int kMaxJetOrder = 4;
inline constexpr int kMaxJetVars = 8;

// Monomial bookkeeping shared by all jets in a given number of variables.
// Monomials are ordered by degree, so the coefficients of a jet of order k
// are a prefix of those of any higher-order jet.
class JetLayout {
 public:
  static const JetLayout& for_vars(int vars);

  int vars() const { return vars_; }
  std::size_t size(int order) const { return prefix_[order]; }
  int degree(std::size_t idx) const { return degree_[idx]; }
  std::span<const std::uint8_t> exponent(std::size_t idx) const {
    return {exponents_.data() + idx * vars_, static_cast<std::size_t>(vars_)};
  }
  // Index of the monomial with the given exponents (degree <= kMaxJetOrder).
  std::size_t index(std::span<const int> exponent) const;
  // Index of x^alpha * x_var, or -1 if that exceeds kMaxJetOrder.
  std::int32_t raise(std::size_t idx, int var) const { return raise_[idx * vars_ + var]; }
  // alpha! for the monomial at idx.
  double factorial(std::size_t idx) const { return factorial_[idx]; }
  const kernels::ProductPlan& product_plan() const { return plan_; }

 private:
  explicit JetLayout(int vars);

  int vars_;
  std::array<std::size_t, kMaxJetOrder + 1> prefix_{};
  std::vector<std::uint8_t> exponents_;
  std::vector<int> degree_;
  std::vector<std::int32_t> raise_;
  std::vector<double> factorial_;
  kernels::ProductPlan plan_;
};

class Jet {
 public:
  // A layout-free constant; combines with any jet.
  Jet() : coeffs_{0.0} {}
  Jet(double value) : coeffs_{value} {}  // NOLINT(google-explicit-constructor)

  static Jet constant(const JetLayout& layout, int order, double value);
  // The coordinate function x_var expanded around `at`.
  static Jet variable(const JetLayout& layout, int order, int var, double at);
  // Builds a jet from its Taylor coefficients (size must be layout.size(order)).
  static Jet from_coefficients(const JetLayout& layout, int order, std::vector<double> coeffs);
  // A constant with the same layout and order as `like`.
  static Jet constant_like(const Jet& like, double value);

  bool is_constant() const { return layout_ == nullptr; }
  const JetLayout* layout() const { return layout_; }
  // Constants report kMaxJetOrder.
  int order() const { return layout_ ? order_ : kMaxJetOrder; }
  double value() const { return coeffs_[0]; }
  std::span<const double> coefficients() const { return coeffs_; }

  // d^alpha f at the base point. Throws if |alpha| exceeds order().
  double partial(std::span<const int> multi_index) const;
  // d f / d x_var as a jet of order order()-1. Throws for order 0.
  Jet derivative(int var) const;
  Jet truncated(int order) const;

  Jet& operator+=(const Jet& rhs);
  Jet& operator-=(const Jet& rhs);
  Jet& operator*=(const Jet& rhs);
  Jet& operator/=(const Jet& rhs);
  Jet& operator+=(double rhs) { coeffs_[0] += rhs; return *this; }
  Jet& operator-=(double rhs) { coeffs_[0] -= rhs; return *this; }
  Jet& operator*=(double rhs);
  Jet& operator/=(double rhs) { return *this *= 1.0 / rhs; }
  Jet operator-() const;

  // this += alpha * x, truncating to the common order.
  void add_scaled(double alpha, const Jet& x);

  // f(x0 + d) = sum_k taylor[k] d^k where x0 = value(); taylor[k] = f^(k)(x0)/k!.
  Jet compose(std::span<const double> taylor) const;

 private:
  Jet(const JetLayout* layout, int order, std::vector<double> coeffs)
      : layout_(layout), order_(order), coeffs_(std::move(coeffs)) {}

  void promote_to(const JetLayout* layout, int order);
  friend Jet operator*(const Jet& a, const Jet& b);

  const JetLayout* layout_ = nullptr;
  int order_ = 0;
  std::vector<double> coeffs_;
};

inline Jet operator+(Jet a, const Jet& b) { return a += b; }
inline Jet operator-(Jet a, const Jet& b) { return a -= b; }
Jet operator*(const Jet& a, const Jet& b);
inline Jet operator/(Jet a, const Jet& b) { return a /= b; }
inline Jet operator+(Jet a, double b) { return a += b; }
inline Jet operator+(double a, Jet b) { return b += a; }
inline Jet operator-(Jet a, double b) { return a -= b; }
inline Jet operator-(double a, const Jet& b) { return -b + a; }
inline Jet operator*(Jet a, double b) { return a *= b; }
inline Jet operator*(double a, Jet b) { return b *= a; }
inline Jet operator/(Jet a, double b) { return a /= b; }
Jet operator/(double a, const Jet& b);

Jet reciprocal(const Jet& x);
Jet sqrt(const Jet& x);
Jet exp(const Jet& x);
Jet sin(const Jet& x);
Jet cos(const Jet& x);
Jet sinh(const Jet& x);
Jet cosh(const Jet& x);
Jet square(const Jet& x);

}  // namespace whitney
