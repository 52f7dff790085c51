#include "whitney/cpn.hpp"

#include <cmath>

namespace whitney {
namespace {

void normalize(std::vector<Jet>& z) {
  Jet s = square(z[0]);
  for (std::size_t k = 1; k < z.size(); ++k) s += square(z[k]);
  const Jet inv = reciprocal(sqrt(s));
  for (Jet& c : z) c *= inv;
}

}  // namespace

Immersion make_whitney_cpn(double theta, int n) {
  if (n < 2 || n + 1 > kMaxJetVars) fail(ErrorKind::kInvalidArgument, "whitney_cpn: unsupported dimension");
  if (!(theta > 0.0)) fail(ErrorKind::kInvalidArgument, "whitney_cpn: theta must be positive");
  Immersion imm;
  imm.name = "whitney_cpn";
  imm.source_dim = n;
  imm.source = SourceKind::kSphere;
  imm.ambient = AmbientKind::kHomogeneousSphere;
  imm.ambient_complex_dim = n + 1;
  imm.params["theta"] = {theta};
  const double ch = std::cosh(theta), sh = std::sinh(theta);
  imm.model_map = [n, ch, sh](std::span<const Jet> x) {
    const Jet& last = x[n];
    const Jet last2 = square(last);
    const Jet inv = reciprocal(ch * ch + sh * sh * last2);
    std::vector<Jet> z;
    z.reserve(2 * (n + 1));
    // x_j / (ch + i sh x_{n+1})
    for (int j = 0; j < n; ++j) {
      z.push_back(ch * x[j] * inv);
      z.push_back(-sh * x[j] * last * inv);
    }
    // (sh ch (1 + x_{n+1}^2) + i x_{n+1}) / (ch^2 + sh^2 x_{n+1}^2)
    z.push_back(sh * ch * (1.0 + last2) * inv);
    z.push_back(last * inv);
    normalize(z);
    return z;
  };
  return imm;
}

Immersion make_rpn(int n) {
  if (n < 1 || n + 1 > kMaxJetVars) fail(ErrorKind::kInvalidArgument, "rpn: unsupported dimension");
  Immersion imm;
  imm.name = "rpn";
  imm.source_dim = n;
  imm.source = SourceKind::kSphere;
  imm.ambient = AmbientKind::kHomogeneousSphere;
  imm.ambient_complex_dim = n + 1;
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

Immersion rephase(const Immersion& imm, ModelFunction phase) {
  if (imm.ambient != AmbientKind::kHomogeneousSphere || !imm.model_map) {
    fail(ErrorKind::kInvalidArgument, "rephase applies to analytic CP^n immersions");
  }
  Immersion out = imm;
  out.params["rephased"] = {1.0};
  out.model_map = [inner = imm.model_map, phase = std::move(phase)](std::span<const Jet> x) {
    auto z = inner(x);
    const Jet t = phase(x);
    const Jet c = cos(t), s = sin(t);
    for (std::size_t k = 0; k + 1 < z.size(); k += 2) {
      const Jet re = z[k] * c - z[k + 1] * s;
      const Jet im = z[k] * s + z[k + 1] * c;
      z[k] = re;
      z[k + 1] = im;
    }
    return z;
  };
  return out;
}

std::vector<std::complex<double>> homogeneous_point(const Immersion& imm, const ChartPoint& p) {
  const auto v = evaluate(imm, p);
  double s = 0.0;
  for (double x : v) s += x * x;
  if (!(s > 0.0)) fail(ErrorKind::kDegenerateMetric, "homogeneous representative vanishes");
  s = std::sqrt(s);
  std::vector<std::complex<double>> z;
  for (std::size_t k = 0; k + 1 < v.size(); k += 2) z.emplace_back(v[k] / s, v[k + 1] / s);
  return z;
}

std::vector<Jet> lifted_components(const Immersion& imm, const ChartPoint& p, int order) {
  if (imm.ambient != AmbientKind::kHomogeneousSphere) {
    fail(ErrorKind::kInvalidArgument, imm.name + ": not an immersion into CP^n");
  }
  const int n = imm.source_dim;
  std::vector<Jet> z = eval_jet(imm, p, order).components;
  normalize(z);
  const int N = static_cast<int>(z.size()) / 2;

  // a_a = Im <d_a z, z>; the horizontal phase beta solves d_a beta = -a_a.
  std::vector<Jet> conn(n);
  for (int a = 0; a < n; ++a) {
    Jet v = 0.0;
    for (int k = 0; k < N; ++k) {
      v += z[2 * k + 1].derivative(a) * z[2 * k];
      v -= z[2 * k].derivative(a) * z[2 * k + 1];
    }
    conn[a] = std::move(v);
  }
  double beta0 = 0.0;
  for (int k = 0; k < N; ++k) {
    const double re = z[2 * k].value(), im = z[2 * k + 1].value();
    if (std::hypot(re, im) > 1e-8) {
      beta0 = -std::atan2(im, re);
      break;
    }
  }
  const JetLayout& layout = JetLayout::for_vars(n);
  std::vector<double> coeffs(layout.size(order), 0.0);
  coeffs[0] = beta0;
  std::vector<int> alpha(n);
  for (std::size_t idx = 1; idx < coeffs.size(); ++idx) {
    const auto ex = layout.exponent(idx);
    int a = 0;
    while (ex[a] == 0) ++a;
    for (int b = 0; b < n; ++b) alpha[b] = ex[b];
    --alpha[a];
    const std::size_t lower = layout.index(alpha);
    const auto c = conn[a].coefficients();
    const double v = lower < c.size() ? c[lower] : 0.0;
    coeffs[idx] = -v / ex[a];
  }
  const Jet beta = Jet::from_coefficients(layout, order, std::move(coeffs));
  const Jet c = cos(beta), s = sin(beta);
  std::vector<Jet> out(z.size());
  for (int k = 0; k < N; ++k) {
    out[2 * k] = z[2 * k] * c - z[2 * k + 1] * s;
    out[2 * k + 1] = z[2 * k] * s + z[2 * k + 1] * c;
  }
  return out;
}

double horizontality_residual(const std::vector<Jet>& lift) {
  const int N = static_cast<int>(lift.size()) / 2;
  const JetLayout* layout = lift[0].layout();
  if (!layout) return 0.0;
  double worst = 0.0;
  for (int a = 0; a < layout->vars(); ++a) {
    double v = 0.0;
    for (int k = 0; k < N; ++k) {
      v += lift[2 * k + 1].derivative(a).value() * lift[2 * k].value();
      v -= lift[2 * k].derivative(a).value() * lift[2 * k + 1].value();
    }
    worst = std::max(worst, std::abs(v));
  }
  return worst;
}

GeometryState cpn_geometry_state(const Immersion& imm, const ChartPoint& p, Depth depth,
                                 const GeometryOptions& options) {
  if (imm.ambient != AmbientKind::kHomogeneousSphere) {
    fail(ErrorKind::kInvalidArgument, imm.name + ": not an immersion into CP^n");
  }
  if (imm.ambient_complex_dim != imm.source_dim + 1) {
    fail(ErrorKind::kNotLagrangian, imm.name + ": Lagrangian condition violated (dimension mismatch)");
  }
  const ChartPoint q = normalize_chart(imm, p);
  auto lift = lifted_components(imm, q, jet_order(depth));
  GeometryState s = geometry_from_components(std::move(lift), imm.source_dim, 1.0, depth, options);
  s.point = q;
  s.immersion = imm.name;
  return s;
}

}  // namespace whitney
