#include "whitney/immersion.hpp"

#include <cmath>
#include <numbers>
#include <utility>

namespace whitney {
namespace {

constexpr double kSphereChartRadius = 2.0;
constexpr double kOverlapInner = 0.5;

Jet power(const Jet& x, int p) {
  Jet out = 1.0;
  for (int k = 0; k < p; ++k) out = out * x;
  return out;
}

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

std::vector<Jet> sphere_chart(std::span<const Jet> u, int chart_id) {
  const int n = static_cast<int>(u.size());
  Jet r2 = 0.0;
  for (const Jet& c : u) r2 += square(c);
  const Jet inv = reciprocal(1.0 + r2);
  std::vector<Jet> x;
  x.reserve(n + 1);
  for (int a = 0; a < n; ++a) x.push_back(2.0 * u[a] * inv);
  if (chart_id == 0) {
    x.push_back(2.0 * inv - 1.0);
  } else {
    x.push_back(1.0 - 2.0 * inv);
  }
  return x;
}

void require_dim(int n, int min_dim) {
  if (n < min_dim || n > kMaxJetVars) {
    fail(ErrorKind::kInvalidArgument, "dimension must lie in [" + std::to_string(min_dim) + ", " +
                                          std::to_string(kMaxJetVars) + "]");
  }
}

// Central-difference weights on offsets -2..2 for the k-th derivative
// (second-order accurate), scaled by h^k separately.
constexpr double kStencil[5][5] = {
    {0, 0, 1, 0, 0},
    {0, -0.5, 0, 0.5, 0},
    {0, 1, -2, 1, 0},
    {-0.5, 1, 0, -1, 0.5},
    {1, -4, 6, -4, 1},
};
constexpr double kFdStep[5] = {0.0, 1e-3, 1e-3, 1e-2, 2e-2};

class StencilCache {
 public:
  StencilCache(const Immersion& imm, const ChartPoint& p) : imm_(imm), p_(p) {}

  const std::vector<double>& at(const std::vector<int>& offsets, double step) {
    auto key = std::make_pair(step, offsets);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    std::vector<double> coords = p_.coords;
    for (std::size_t a = 0; a < coords.size(); ++a) coords[a] += offsets[a] * step;
    std::vector<double> v = imm_.black_box(coords, p_.chart_id);
    if (static_cast<int>(v.size()) != imm_.ambient_real_dim()) {
      fail(ErrorKind::kInvalidArgument, "black-box map returned the wrong number of coordinates");
    }
    return cache_.emplace(std::move(key), std::move(v)).first->second;
  }

 private:
  const Immersion& imm_;
  const ChartPoint& p_;
  std::map<std::pair<double, std::vector<int>>, std::vector<double>> cache_;
};

std::vector<double> stencil_derivative(StencilCache& cache, std::span<const std::uint8_t> alpha,
                                       double step, int comps) {
  const int n = static_cast<int>(alpha.size());
  std::vector<double> out(comps, 0.0);
  std::vector<int> offsets(n, -2);
  while (true) {
    double w = 1.0;
    for (int a = 0; a < n && w != 0.0; ++a) w *= kStencil[alpha[a]][offsets[a] + 2];
    if (w != 0.0) {
      const auto& v = cache.at(offsets, step);
      for (int c = 0; c < comps; ++c) out[c] += w * v[c];
    }
    int a = 0;
    while (a < n && offsets[a] == 2) offsets[a++] = -2;
    if (a == n) break;
    ++offsets[a];
  }
  int degree = 0;
  for (auto k : alpha) degree += k;
  const double scale = std::pow(step, -degree);
  for (double& x : out) x *= scale;
  return out;
}

std::vector<Jet> black_box_jets(const Immersion& imm, const ChartPoint& p, int order) {
  const int n = imm.source_dim;
  const int comps = imm.ambient_real_dim();
  const JetLayout& layout = JetLayout::for_vars(n);
  const std::size_t size = layout.size(order);
  std::vector<std::vector<double>> coeffs(comps, std::vector<double>(size, 0.0));
  StencilCache cache(imm, p);
  for (std::size_t idx = 0; idx < size; ++idx) {
    const auto alpha = layout.exponent(idx);
    const int degree = layout.degree(idx);
    std::vector<double> d;
    if (degree == 0) {
      d = cache.at(std::vector<int>(n, 0), 0.0);
    } else {
      const double h = kFdStep[degree];
      const auto coarse = stencil_derivative(cache, alpha, h, comps);
      const auto fine = stencil_derivative(cache, alpha, 0.5 * h, comps);
      d.resize(comps);
      for (int c = 0; c < comps; ++c) d[c] = (4.0 * fine[c] - coarse[c]) / 3.0;
    }
    for (int c = 0; c < comps; ++c) coeffs[c][idx] = d[c] / layout.factorial(idx);
  }
  std::vector<Jet> out;
  out.reserve(comps);
  for (auto& c : coeffs) out.push_back(Jet::from_coefficients(layout, order, std::move(c)));
  return out;
}

}  // namespace

std::vector<double> ImmersionJet::values() const {
  std::vector<double> v;
  v.reserve(components.size());
  for (const Jet& c : components) v.push_back(c.value());
  return v;
}

double ImmersionJet::partial(int component, std::span<const int> multi_index) const {
  return components.at(component).partial(multi_index);
}

Immersion make_whitney_cn(double r, std::vector<std::complex<double>> A, int n) {
  require_dim(n, 2);
  if (!(r > 0.0)) fail(ErrorKind::kInvalidArgument, "whitney_cn: r must be positive");
  if (A.empty()) A.assign(n, 0.0);
  if (static_cast<int>(A.size()) != n) fail(ErrorKind::kInvalidArgument, "whitney_cn: A must have n entries");
  Immersion imm;
  imm.name = "whitney_cn";
  imm.source_dim = n;
  imm.source = SourceKind::kSphere;
  imm.ambient_complex_dim = n;
  imm.params["r"] = {r};
  std::vector<double> a_flat;
  for (auto z : A) {
    a_flat.push_back(z.real());
    a_flat.push_back(z.imag());
  }
  imm.params["A"] = a_flat;
  imm.model_map = [r, A, n](std::span<const Jet> x) {
    const Jet& last = x[n];
    const Jet inv = reciprocal(1.0 + square(last));
    std::vector<Jet> z;
    z.reserve(2 * n);
    for (int j = 0; j < n; ++j) {
      const Jet common = r * x[j] * inv;
      z.push_back(common + A[j].real());
      z.push_back(common * last + A[j].imag());
    }
    return z;
  };
  return imm;
}

Immersion make_product_torus(std::vector<double> radii) {
  const int n = static_cast<int>(radii.size());
  require_dim(n, 1);
  for (double r : radii) {
    if (!(r > 0.0)) fail(ErrorKind::kInvalidArgument, "torus: radii must be positive");
  }
  Immersion imm;
  imm.name = "torus";
  imm.source_dim = n;
  imm.source = SourceKind::kTorus;
  imm.ambient_complex_dim = n;
  imm.params["radii"] = radii;
  imm.model_map = [radii](std::span<const Jet> t) {
    std::vector<Jet> z;
    z.reserve(2 * radii.size());
    for (std::size_t j = 0; j < radii.size(); ++j) {
      z.push_back(radii[j] * cos(t[j]));
      z.push_back(radii[j] * sin(t[j]));
    }
    return z;
  };
  return imm;
}

Immersion make_lagrangian_plane(int n, double complexify) {
  require_dim(n, 1);
  if (complexify != 0.0 && n < 2) fail(ErrorKind::kInvalidArgument, "plane: complexify needs n >= 2");
  Immersion imm;
  imm.name = "plane";
  imm.source_dim = n;
  imm.source = SourceKind::kEuclidean;
  imm.ambient_complex_dim = n;
  if (complexify != 0.0) imm.params["complexify"] = {complexify};
  imm.model_map = [n, complexify](std::span<const Jet> x) {
    std::vector<Jet> z;
    z.reserve(2 * n);
    for (int j = 0; j < n; ++j) {
      z.push_back(x[j]);
      z.push_back(j == 1 && complexify != 0.0 ? complexify * x[0] : Jet(0.0));
    }
    return z;
  };
  return imm;
}

Immersion make_perturbed_whitney(double r, double eps, int mode, int n) {
  require_dim(n, 2);
  if (!(r > 0.0)) fail(ErrorKind::kInvalidArgument, "perturbed_whitney: r must be positive");
  if (!(std::abs(eps) < 0.1 * r)) fail(ErrorKind::kInvalidArgument, "perturbed_whitney: need |eps| < 0.1 r");
  if (mode < 0) fail(ErrorKind::kInvalidArgument, "perturbed_whitney: mode must be >= 0");
  std::vector<double> a(n), b(n);
  double na = 0.0;
  for (int j = 0; j < n; ++j) {
    a[j] = j + 1.0;
    na += a[j] * a[j];
    b[j] = (j % 2 == 0 ? 1.0 : -1.0) / std::sqrt(static_cast<double>(n));
  }
  for (double& v : a) v /= std::sqrt(na);

  Immersion imm;
  imm.name = "perturbed_whitney";
  imm.source_dim = n;
  imm.source = SourceKind::kSphere;
  imm.ambient_complex_dim = n;
  imm.params["r"] = {r};
  imm.params["eps"] = {eps};
  imm.params["mode"] = {static_cast<double>(mode)};
  imm.model_map = [r, eps, mode, n, a, b](std::span<const Jet> x) {
    const Jet& last = x[n];
    const Jet inv = reciprocal(1.0 + square(last));
    std::vector<Jet> re(n), im(n);
    for (int j = 0; j < n; ++j) {
      re[j] = r * x[j] * inv;
      im[j] = re[j] * last;
    }
    if (eps != 0.0) {
      Jet sa = 0.0, sb = 0.0;
      for (int j = 0; j < n; ++j) {
        sa.add_scaled(a[j] / r, re[j]);
        sb.add_scaled(b[j] / r, re[j]);
      }
      const Jet pa = power(sa, mode + 1);
      const Jet pb = power(sb, mode + 1);
      for (int j = 0; j < n; ++j) {
        im[j].add_scaled(eps * a[j], pa);
        im[j].add_scaled(eps * b[j], pb);
      }
    }
    std::vector<Jet> z;
    z.reserve(2 * n);
    for (int j = 0; j < n; ++j) {
      z.push_back(std::move(re[j]));
      z.push_back(std::move(im[j]));
    }
    return z;
  };
  return imm;
}

Immersion make_round_sphere(int n) {
  require_dim(n, 1);
  Immersion imm;
  imm.name = "round_sphere";
  imm.source_dim = n;
  imm.source = SourceKind::kSphere;
  imm.ambient_complex_dim = n + 1;
  imm.lagrangian = false;
  imm.model_map = [n](std::span<const Jet> x) {
    std::vector<Jet> z;
    z.reserve(2 * (n + 1));
    for (int j = 0; j <= n; ++j) {
      z.push_back(x[j]);
      z.push_back(0.0);
    }
    return z;
  };
  return imm;
}

Immersion make_black_box(std::string name, int n, SourceKind source, AmbientKind ambient,
                         int ambient_complex_dim, BlackBoxMap map) {
  require_dim(n, 1);
  if (!map) fail(ErrorKind::kInvalidArgument, "black box: map is empty");
  Immersion imm;
  imm.name = std::move(name);
  imm.source_dim = n;
  imm.source = source;
  imm.ambient = ambient;
  imm.ambient_complex_dim = ambient_complex_dim;
  imm.black_box = std::move(map);
  return imm;
}

Immersion dilate(const Immersion& imm, double lambda) {
  if (!(lambda > 0.0)) fail(ErrorKind::kInvalidArgument, "dilation factor must be positive");
  if (imm.ambient != AmbientKind::kComplexEuclidean) {
    fail(ErrorKind::kInvalidArgument, "dilation is defined for immersions into C^n");
  }
  Immersion out = imm;
  out.params["dilation"] = {lambda * (imm.params.count("dilation") ? imm.params.at("dilation")[0] : 1.0)};
  if (imm.model_map) {
    out.model_map = [inner = imm.model_map, lambda](std::span<const Jet> x) {
      auto z = inner(x);
      for (Jet& c : z) c *= lambda;
      return z;
    };
  } else {
    out.black_box = [inner = imm.black_box, lambda](std::span<const double> u, int chart) {
      auto z = inner(u, chart);
      for (double& c : z) c *= lambda;
      return z;
    };
  }
  return out;
}

Immersion unitary_motion(const Immersion& imm, const std::vector<std::complex<double>>& U,
                         const std::vector<std::complex<double>>& b) {
  const int N = imm.ambient_complex_dim;
  if (static_cast<int>(U.size()) != N * N) fail(ErrorKind::kInvalidArgument, "unitary matrix has wrong size");
  std::vector<std::complex<double>> shift = b.empty() ? std::vector<std::complex<double>>(N) : b;
  if (static_cast<int>(shift.size()) != N) fail(ErrorKind::kInvalidArgument, "translation has wrong size");
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      std::complex<double> s = 0.0;
      for (int k = 0; k < N; ++k) s += U[i * N + k] * std::conj(U[j * N + k]);
      if (std::abs(s - (i == j ? 1.0 : 0.0)) > 1e-10) fail(ErrorKind::kInvalidArgument, "matrix is not unitary");
    }
  if (imm.ambient == AmbientKind::kHomogeneousSphere) {
    for (auto s : shift) {
      if (s != 0.0) fail(ErrorKind::kInvalidArgument, "translations do not act on CP^n");
    }
  }
  Immersion out = imm;
  out.params["motion"] = {1.0};
  auto apply = [U, shift, N](const auto& z, auto zero) {
    std::vector<decltype(zero)> w(2 * N, zero);
    for (int i = 0; i < N; ++i) {
      auto re = zero, im = zero;
      re += shift[i].real();
      im += shift[i].imag();
      for (int k = 0; k < N; ++k) {
        const double a = U[i * N + k].real(), c = U[i * N + k].imag();
        re += a * z[2 * k] - c * z[2 * k + 1];
        im += c * z[2 * k] + a * z[2 * k + 1];
      }
      w[2 * i] = re;
      w[2 * i + 1] = im;
    }
    return w;
  };
  if (imm.model_map) {
    out.model_map = [inner = imm.model_map, apply](std::span<const Jet> x) { return apply(inner(x), Jet(0.0)); };
  } else {
    out.black_box = [inner = imm.black_box, apply](std::span<const double> u, int chart) {
      return apply(inner(u, chart), 0.0);
    };
  }
  return out;
}

std::vector<std::complex<double>> random_unitary(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<std::complex<double>> U(n * n);
  for (int i = 0; i < n; ++i) {
    std::vector<std::complex<double>> v(n);
    for (auto& c : v) c = {normal(rng), normal(rng)};
    for (int j = 0; j < i; ++j) {
      std::complex<double> d = 0.0;
      for (int k = 0; k < n; ++k) d += v[k] * std::conj(U[j * n + k]);
      for (int k = 0; k < n; ++k) v[k] -= d * U[j * n + k];
    }
    double len = 0.0;
    for (auto c : v) len += std::norm(c);
    len = std::sqrt(len);
    for (int k = 0; k < n; ++k) U[i * n + k] = v[k] / len;
  }
  return U;
}

bool in_domain(const Immersion& imm, const ChartPoint& p) {
  if (static_cast<int>(p.coords.size()) != imm.source_dim) return false;
  for (double c : p.coords) {
    if (!std::isfinite(c)) return false;
  }
  switch (imm.source) {
    case SourceKind::kSphere:
      return (p.chart_id == 0 || p.chart_id == 1) && norm2(p.coords) <= kSphereChartRadius * kSphereChartRadius;
    case SourceKind::kTorus:
    case SourceKind::kEuclidean:
      return p.chart_id == 0;
  }
  return false;
}

std::vector<Jet> model_jets(const Immersion& imm, const ChartPoint& p, int order) {
  if (!in_domain(imm, p)) fail(ErrorKind::kOutOfDomain, imm.name + ": chart point outside the chart domain");
  const JetLayout& layout = JetLayout::for_vars(imm.source_dim);
  std::vector<Jet> u;
  u.reserve(imm.source_dim);
  for (int a = 0; a < imm.source_dim; ++a) u.push_back(Jet::variable(layout, order, a, p.coords[a]));
  if (imm.source == SourceKind::kSphere) return sphere_chart(u, p.chart_id);
  return u;
}

std::vector<double> model_point(const Immersion& imm, const ChartPoint& p) {
  std::vector<double> x;
  for (const Jet& j : model_jets(imm, p, 0)) x.push_back(j.value());
  return x;
}

ChartPoint chart_from_model(const Immersion& imm, std::span<const double> model) {
  if (static_cast<int>(model.size()) != imm.model_dim()) {
    fail(ErrorKind::kInvalidArgument, "model point has the wrong dimension");
  }
  const int n = imm.source_dim;
  ChartPoint p;
  p.coords.resize(n);
  switch (imm.source) {
    case SourceKind::kSphere: {
      const double last = model[n];
      p.chart_id = last >= 0.0 ? 0 : 1;
      const double den = last >= 0.0 ? 1.0 + last : 1.0 - last;
      for (int a = 0; a < n; ++a) p.coords[a] = model[a] / den;
      break;
    }
    case SourceKind::kTorus:
      for (int a = 0; a < n; ++a) {
        p.coords[a] = model[a] - 2.0 * std::numbers::pi * std::floor((model[a] + std::numbers::pi) / (2.0 * std::numbers::pi));
      }
      break;
    case SourceKind::kEuclidean:
      for (int a = 0; a < n; ++a) p.coords[a] = model[a];
      break;
  }
  return p;
}

ImmersionJet eval_jet(const Immersion& imm, const ChartPoint& p, int order) {
  if (order < 1 || order > kMaxJetOrder) {
    fail(ErrorKind::kUnsupportedOrder, "jet order must lie in [1, " + std::to_string(kMaxJetOrder) + "]");
  }
  if (!in_domain(imm, p)) fail(ErrorKind::kOutOfDomain, imm.name + ": chart point outside the chart domain");
  ImmersionJet jet;
  jet.order = order;
  jet.source_dim = imm.source_dim;
  if (imm.model_map) {
    const auto x = model_jets(imm, p, order);
    jet.components = imm.model_map(x);
    const JetLayout& layout = JetLayout::for_vars(imm.source_dim);
    for (Jet& c : jet.components) {
      if (c.is_constant()) c = Jet::constant(layout, order, c.value());
    }
  } else {
    jet.components = black_box_jets(imm, p, order);
  }
  if (static_cast<int>(jet.components.size()) != imm.ambient_real_dim()) {
    fail(ErrorKind::kInvalidArgument, imm.name + ": map returned the wrong number of coordinates");
  }
  return jet;
}

std::vector<double> evaluate(const Immersion& imm, const ChartPoint& p) {
  if (!imm.model_map) {
    if (!in_domain(imm, p)) fail(ErrorKind::kOutOfDomain, imm.name + ": chart point outside the chart domain");
    return imm.black_box(p.coords, p.chart_id);
  }
  std::vector<double> v;
  for (const Jet& c : imm.model_map(model_jets(imm, p, 0))) v.push_back(c.value());
  return v;
}

Jet eval_model_function(const Immersion& imm, const ModelFunction& f, const ChartPoint& p, int order) {
  Jet v = f(model_jets(imm, p, order));
  if (v.is_constant()) v = Jet::constant(JetLayout::for_vars(imm.source_dim), order, v.value());
  return v;
}

ChartPoint chart_transition(const Immersion& imm, const ChartPoint& p, int target_chart) {
  if (!in_domain(imm, p)) fail(ErrorKind::kOutOfDomain, "chart point outside the chart domain");
  switch (imm.source) {
    case SourceKind::kSphere: {
      if (target_chart != 0 && target_chart != 1) fail(ErrorKind::kInvalidArgument, "S^n atlas has charts 0 and 1");
      if (target_chart == p.chart_id) return p;
      const double r2 = norm2(p.coords);
      if (!(r2 >= kOverlapInner * kOverlapInner)) fail(ErrorKind::kOutOfDomain, "point not in chart overlap");
      ChartPoint q{target_chart, p.coords};
      for (double& c : q.coords) c /= r2;
      return q;
    }
    case SourceKind::kTorus: {
      if (target_chart != 0) fail(ErrorKind::kInvalidArgument, "torus atlas has a single chart");
      return chart_from_model(imm, p.coords);
    }
    case SourceKind::kEuclidean:
      if (target_chart != 0) fail(ErrorKind::kInvalidArgument, "R^n atlas has a single chart");
      return p;
  }
  return p;
}

ChartPoint normalize_chart(const Immersion& imm, const ChartPoint& p) {
  if (imm.source == SourceKind::kSphere && norm2(p.coords) > 1.0) return chart_transition(imm, p, 1 - p.chart_id);
  return p;
}

std::vector<ChartPoint> sample_points(const Immersion& imm, int count, std::mt19937_64& rng) {
  std::vector<ChartPoint> out;
  out.reserve(count);
  const int n = imm.source_dim;
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  std::uniform_real_distribution<double> box(-1.0, 1.0);
  for (int k = 0; k < count; ++k) {
    std::vector<double> x(imm.model_dim());
    switch (imm.source) {
      case SourceKind::kSphere: {
        double len = 0.0;
        do {
          for (double& c : x) c = normal(rng);
          len = std::sqrt(norm2(x));
        } while (len < 1e-6);
        for (double& c : x) c /= len;
        break;
      }
      case SourceKind::kTorus:
        for (double& c : x) c = angle(rng);
        break;
      case SourceKind::kEuclidean:
        for (double& c : x) c = box(rng);
        break;
    }
    out.push_back(chart_from_model(imm, x));
  }
  (void)n;
  return out;
}

}  // namespace whitney
