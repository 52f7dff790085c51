#include "whitney/jet.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "whitney/error.hpp"

namespace whitney {
namespace {

// All exponent vectors of total degree exactly `deg`, lexicographically
// descending in the first variable.
void enumerate_degree(int vars, int deg, std::vector<int>& cur, int pos,
                      std::vector<std::vector<int>>& out) {
  if (pos == vars - 1) {
    cur[pos] = deg;
    out.push_back(cur);
    return;
  }
  for (int e = deg; e >= 0; --e) {
    cur[pos] = e;
    enumerate_degree(vars, deg - e, cur, pos + 1, out);
  }
}

double factorial_of(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

JetLayout::JetLayout(int vars) : vars_(vars) {
  std::vector<std::vector<int>> monomials;
  for (int deg = 0; deg <= kMaxJetOrder; ++deg) {
    std::vector<int> cur(vars, 0);
    enumerate_degree(vars, deg, cur, 0, monomials);
    prefix_[deg] = monomials.size();
  }
  const std::size_t count = monomials.size();
  std::map<std::vector<int>, std::int32_t> lookup;
  exponents_.resize(count * vars);
  degree_.resize(count);
  factorial_.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    int deg = 0;
    double fact = 1.0;
    for (int v = 0; v < vars; ++v) {
      exponents_[i * vars + v] = static_cast<std::uint8_t>(monomials[i][v]);
      deg += monomials[i][v];
      fact *= factorial_of(monomials[i][v]);
    }
    degree_[i] = deg;
    factorial_[i] = fact;
    lookup.emplace(monomials[i], static_cast<std::int32_t>(i));
  }

  raise_.assign(count * vars, -1);
  for (std::size_t i = 0; i < count; ++i) {
    if (degree_[i] == kMaxJetOrder) continue;
    for (int v = 0; v < vars; ++v) {
      auto up = monomials[i];
      ++up[v];
      raise_[i * vars + v] = lookup.at(up);
    }
  }

  plan_.offsets.reserve(count + 1);
  plan_.offsets.push_back(0);
  for (std::size_t k = 0; k < count; ++k) {
    const auto& gamma = monomials[k];
    for (std::size_t a = 0; a < prefix_[degree_[k]]; ++a) {
      const auto& alpha = monomials[a];
      bool fits = true;
      std::vector<int> beta(vars);
      for (int v = 0; v < vars && fits; ++v) {
        beta[v] = gamma[v] - alpha[v];
        fits = beta[v] >= 0;
      }
      if (!fits) continue;
      plan_.lhs.push_back(static_cast<std::int32_t>(a));
      plan_.rhs.push_back(lookup.at(beta));
    }
    plan_.offsets.push_back(static_cast<std::int32_t>(plan_.lhs.size()));
  }
}

const JetLayout& JetLayout::for_vars(int vars) {
  if (vars < 1 || vars > kMaxJetVars) {
    fail(ErrorKind::kInvalidArgument, "jet variable count must be in [1, 8]");
  }
  static std::array<std::unique_ptr<JetLayout>, kMaxJetVars + 1> cache;
  static std::mutex mutex;
  std::lock_guard lock(mutex);
  auto& slot = cache[vars];
  if (!slot) slot.reset(new JetLayout(vars));
  return *slot;
}

std::size_t JetLayout::index(std::span<const int> exponent) const {
  if (static_cast<int>(exponent.size()) != vars_) {
    fail(ErrorKind::kInvalidArgument, "multi-index has wrong length");
  }
  std::size_t idx = 0;
  for (int v = 0; v < vars_; ++v) {
    if (exponent[v] < 0) fail(ErrorKind::kInvalidArgument, "negative multi-index entry");
    for (int e = 0; e < exponent[v]; ++e) {
      const std::int32_t next = raise(idx, v);
      if (next < 0) fail(ErrorKind::kUnsupportedOrder, "multi-index exceeds maximum jet order");
      idx = static_cast<std::size_t>(next);
    }
  }
  return idx;
}

Jet Jet::constant(const JetLayout& layout, int order, double value) {
  std::vector<double> c(layout.size(order), 0.0);
  c[0] = value;
  return Jet(&layout, order, std::move(c));
}

Jet Jet::variable(const JetLayout& layout, int order, int var, double at) {
  if (order < 0 || order > kMaxJetOrder) fail(ErrorKind::kUnsupportedOrder, "jet order out of range");
  Jet j = constant(layout, order, at);
  if (order >= 1) j.coeffs_[layout.raise(0, var)] = 1.0;
  return j;
}

Jet Jet::from_coefficients(const JetLayout& layout, int order, std::vector<double> coeffs) {
  if (coeffs.size() != layout.size(order)) {
    fail(ErrorKind::kInvalidArgument, "coefficient count does not match jet order");
  }
  return Jet(&layout, order, std::move(coeffs));
}

double Jet::partial(std::span<const int> multi_index) const {
  int total = 0;
  for (int e : multi_index) total += e;
  if (total == 0) return coeffs_[0];
  if (!layout_) return 0.0;
  if (total > order_) fail(ErrorKind::kUnsupportedOrder, "derivative order exceeds jet order");
  const std::size_t idx = layout_->index(multi_index);
  return layout_->factorial(idx) * coeffs_[idx];
}

Jet Jet::derivative(int var) const {
  if (!layout_) return Jet(0.0);
  if (order_ == 0) fail(ErrorKind::kUnsupportedOrder, "cannot differentiate an order-0 jet");
  const std::size_t n = layout_->size(order_ - 1);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t up = static_cast<std::size_t>(layout_->raise(i, var));
    out[i] = static_cast<double>(layout_->exponent(up)[var]) * coeffs_[up];
  }
  return Jet(layout_, order_ - 1, std::move(out));
}

Jet Jet::truncated(int order) const {
  if (!layout_ || order >= order_) return *this;
  std::vector<double> c(coeffs_.begin(), coeffs_.begin() + layout_->size(order));
  return Jet(layout_, order, std::move(c));
}

void Jet::promote_to(const JetLayout* layout, int order) {
  const double v = coeffs_[0];
  coeffs_.assign(layout->size(order), 0.0);
  coeffs_[0] = v;
  layout_ = layout;
  order_ = order;
}

void Jet::add_scaled(double alpha, const Jet& x) {
  if (!x.layout_) {
    coeffs_[0] += alpha * x.coeffs_[0];
    return;
  }
  if (!layout_) {
    promote_to(x.layout_, x.order_);
  } else if (layout_ != x.layout_) {
    fail(ErrorKind::kInvalidArgument, "jets over different variable sets");
  } else if (x.order_ < order_) {
    coeffs_.resize(layout_->size(x.order_));
    order_ = x.order_;
  }
  kernels::active().axpy(alpha, x.coeffs_.data(), coeffs_.data(), coeffs_.size());
}

Jet& Jet::operator+=(const Jet& rhs) {
  add_scaled(1.0, rhs);
  return *this;
}

Jet& Jet::operator-=(const Jet& rhs) {
  add_scaled(-1.0, rhs);
  return *this;
}

Jet& Jet::operator*=(double rhs) {
  for (double& c : coeffs_) c *= rhs;
  return *this;
}

Jet& Jet::operator*=(const Jet& rhs) {
  *this = *this * rhs;
  return *this;
}

Jet& Jet::operator/=(const Jet& rhs) {
  if (rhs.is_constant()) return *this *= 1.0 / rhs.value();
  *this = *this * reciprocal(rhs);
  return *this;
}

Jet Jet::operator-() const {
  Jet r = *this;
  for (double& c : r.coeffs_) c = -c;
  return r;
}

Jet operator*(const Jet& a, const Jet& b) {
  if (a.is_constant()) return b * a.value();
  if (b.is_constant()) return a * b.value();
  if (a.layout_ != b.layout_) fail(ErrorKind::kInvalidArgument, "jets over different variable sets");
  const int order = std::min(a.order_, b.order_);
  const std::size_t n = a.layout_->size(order);
  std::vector<double> out(n);
  kernels::active().sparse_product(a.coeffs_.data(), b.coeffs_.data(), a.layout_->product_plan(), n,
                                   out.data());
  return Jet(a.layout_, order, std::move(out));
}

Jet operator/(double a, const Jet& b) { return reciprocal(b) * a; }

Jet Jet::compose(std::span<const double> taylor) const {
  if (!layout_ || order_ == 0) return Jet::constant_like(*this, taylor[0]);
  Jet delta = *this;
  delta.coeffs_[0] = 0.0;
  const int top = std::min<int>(order_, static_cast<int>(taylor.size()) - 1);
  Jet result = Jet::constant(*layout_, order_, taylor[top]);
  for (int k = top - 1; k >= 0; --k) {
    result = result * delta;
    result.coeffs_[0] += taylor[k];
  }
  return result;
}

Jet Jet::constant_like(const Jet& like, double value) {
  if (!like.layout_) return Jet(value);
  return constant(*like.layout_, like.order_, value);
}

namespace {

using TaylorTable = std::array<double, kMaxJetOrder + 1>;

}  // namespace

Jet reciprocal(const Jet& x) {
  const double x0 = x.value();
  if (x0 == 0.0 || !std::isfinite(x0)) fail(ErrorKind::kNumeric, "reciprocal of zero jet");
  TaylorTable t{};
  double p = 1.0 / x0;
  for (int k = 0; k <= kMaxJetOrder; ++k) {
    t[k] = (k % 2 == 0 ? 1.0 : -1.0) * p;
    p /= x0;
  }
  return x.compose(t);
}

Jet sqrt(const Jet& x) {
  const double x0 = x.value();
  if (!(x0 > 0.0)) fail(ErrorKind::kNumeric, "square root of nonpositive jet");
  TaylorTable t{};
  const double s = std::sqrt(x0);
  double binom = 1.0;  // C(1/2, k)
  double p = 1.0;
  for (int k = 0; k <= kMaxJetOrder; ++k) {
    t[k] = s * binom * p;
    binom *= (0.5 - k) / (k + 1);
    p /= x0;
  }
  return x.compose(t);
}

Jet exp(const Jet& x) {
  TaylorTable t{};
  const double e = std::exp(x.value());
  for (int k = 0; k <= kMaxJetOrder; ++k) t[k] = e / factorial_of(k);
  return x.compose(t);
}

Jet sin(const Jet& x) {
  TaylorTable t{};
  const double s = std::sin(x.value()), c = std::cos(x.value());
  const double cycle[4] = {s, c, -s, -c};
  for (int k = 0; k <= kMaxJetOrder; ++k) t[k] = cycle[k % 4] / factorial_of(k);
  return x.compose(t);
}

Jet cos(const Jet& x) {
  TaylorTable t{};
  const double s = std::sin(x.value()), c = std::cos(x.value());
  const double cycle[4] = {c, -s, -c, s};
  for (int k = 0; k <= kMaxJetOrder; ++k) t[k] = cycle[k % 4] / factorial_of(k);
  return x.compose(t);
}

Jet sinh(const Jet& x) {
  TaylorTable t{};
  const double s = std::sinh(x.value()), c = std::cosh(x.value());
  for (int k = 0; k <= kMaxJetOrder; ++k) t[k] = (k % 2 == 0 ? s : c) / factorial_of(k);
  return x.compose(t);
}

Jet cosh(const Jet& x) {
  TaylorTable t{};
  const double s = std::sinh(x.value()), c = std::cosh(x.value());
  for (int k = 0; k <= kMaxJetOrder; ++k) t[k] = (k % 2 == 0 ? c : s) / factorial_of(k);
  return x.compose(t);
}

Jet square(const Jet& x) { return x * x; }

}  // namespace whitney
