#include "whitney/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "whitney/kernels.hpp"

namespace whitney {
namespace {

constexpr double kPi = std::numbers::pi;

// Points of S^m in R^{m+1} with weights of the round measure.
void sphere_angle_nodes(int m, int count, std::vector<std::vector<double>>& points, std::vector<double>& weights) {
  std::vector<double> gl_x, gl_w;
  gauss_legendre(count, 0.0, kPi, gl_x, gl_w);
  const int azimuth = 2 * count;
  const int polar = m - 1;
  points.clear();
  weights.clear();
  std::vector<int> idx(polar, 0);
  while (true) {
    double w = 1.0;
    std::vector<double> s(polar), c(polar);
    for (int k = 0; k < polar; ++k) {
      const double psi = gl_x[idx[k]];
      s[k] = std::sin(psi);
      c[k] = std::cos(psi);
      w *= gl_w[idx[k]] * std::pow(s[k], m - 1 - k);
    }
    for (int a = 0; a < azimuth; ++a) {
      const double phi = 2.0 * kPi * (a + 0.5) / azimuth;
      // x_{m+1} = cos psi_1, x_m = sin psi_1 cos psi_2, ..., x_1 = prod sin * cos phi
      std::vector<double> x(m + 1);
      double prod = 1.0;
      for (int k = 0; k < polar; ++k) {
        x[m - k] = prod * c[k];
        prod *= s[k];
      }
      x[1] = prod * std::sin(phi);
      x[0] = prod * std::cos(phi);
      points.push_back(std::move(x));
      weights.push_back(w * 2.0 * kPi / azimuth);
    }
    int k = 0;
    while (k < polar && idx[k] == count - 1) idx[k++] = 0;
    if (k == polar) break;
    ++idx[k];
  }
}

double round_chart_density(const ChartPoint& p) {
  double r2 = 0.0;
  for (double u : p.coords) r2 += u * u;
  return std::pow(2.0 / (1.0 + r2), static_cast<double>(p.coords.size()));
}

void require_rule(const Immersion& imm, const QuadratureRule& rule) {
  if (imm.source != rule.domain || imm.source_dim != rule.n) {
    fail(ErrorKind::kInvalidArgument, "quadrature rule does not match the immersion's model manifold");
  }
}

}  // namespace

void gauss_legendre(int count, double a, double b, std::vector<double>& nodes, std::vector<double>& weights) {
  if (count < 1) fail(ErrorKind::kInvalidArgument, "Gauss-Legendre needs at least one node");
  nodes.assign(count, 0.0);
  weights.assign(count, 0.0);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int i = 0; i < (count + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (count + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= count; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (count == 1) p0 = 1.0;
      dp = count * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= count; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    if (count == 1) p0 = 1.0;
    dp = count * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[i] = mid - half * x;
    nodes[count - 1 - i] = mid + half * x;
    weights[i] = weights[count - 1 - i] = half * w;
  }
}

QuadratureRule sphere_rule(int n, int nodes_per_axis) {
  if (n < 1) fail(ErrorKind::kInvalidArgument, "sphere rule needs n >= 1");
  if (nodes_per_axis < 2) fail(ErrorKind::kInvalidArgument, "sphere rule needs at least two nodes per axis");
  QuadratureRule rule;
  rule.domain = SourceKind::kSphere;
  rule.n = n;
  rule.nodes_per_axis = nodes_per_axis;
  rule.degree = 2 * nodes_per_axis - 1;
  std::vector<std::vector<double>> points;
  std::vector<double> w;
  sphere_angle_nodes(n, nodes_per_axis, points, w);
  const Immersion model = make_round_sphere(n);
  for (std::size_t k = 0; k < points.size(); ++k) {
    ChartPoint p = chart_from_model(model, points[k]);
    rule.weights.push_back(w[k] / round_chart_density(p));
    rule.nodes.push_back(std::move(p));
  }
  return rule;
}

QuadratureRule torus_rule(int n, int nodes_per_axis) {
  if (n < 1) fail(ErrorKind::kInvalidArgument, "torus rule needs n >= 1");
  if (nodes_per_axis < 1) fail(ErrorKind::kInvalidArgument, "torus rule needs at least one node per axis");
  QuadratureRule rule;
  rule.domain = SourceKind::kTorus;
  rule.n = n;
  rule.nodes_per_axis = nodes_per_axis;
  rule.degree = nodes_per_axis - 1;
  const double h = 2.0 * kPi / nodes_per_axis;
  const double w = std::pow(h, n);
  std::vector<int> idx(n, 0);
  while (true) {
    ChartPoint p;
    for (int a = 0; a < n; ++a) p.coords.push_back(-kPi + (idx[a] + 0.5) * h);
    rule.nodes.push_back(std::move(p));
    rule.weights.push_back(w);
    int a = 0;
    while (a < n && idx[a] == nodes_per_axis - 1) idx[a++] = 0;
    if (a == n) break;
    ++idx[a];
  }
  return rule;
}

QuadratureRule ball_rule(int n, double radius, int nodes_per_axis) {
  if (n < 1) fail(ErrorKind::kInvalidArgument, "ball rule needs n >= 1");
  if (!(radius > 0.0)) fail(ErrorKind::kInvalidArgument, "ball radius must be positive");
  if (nodes_per_axis < 2) fail(ErrorKind::kInvalidArgument, "ball rule needs at least two nodes per axis");
  QuadratureRule rule;
  rule.domain = SourceKind::kEuclidean;
  rule.n = n;
  rule.nodes_per_axis = nodes_per_axis;
  rule.degree = 2 * nodes_per_axis - 1;
  rule.radius = radius;
  std::vector<double> rx, rw;
  gauss_legendre(nodes_per_axis, 0.0, radius, rx, rw);
  std::vector<std::vector<double>> dirs;
  std::vector<double> dw;
  if (n == 1) {
    dirs = {{1.0}, {-1.0}};
    dw = {1.0, 1.0};
  } else {
    sphere_angle_nodes(n - 1, nodes_per_axis, dirs, dw);
  }
  for (int i = 0; i < nodes_per_axis; ++i)
    for (std::size_t d = 0; d < dirs.size(); ++d) {
      ChartPoint p;
      for (int a = 0; a < n; ++a) p.coords.push_back(rx[i] * dirs[d][a]);
      rule.nodes.push_back(std::move(p));
      rule.weights.push_back(rw[i] * std::pow(rx[i], n - 1) * dw[d]);
    }
  return rule;
}

int default_nodes_per_axis(SourceKind domain, int n) {
  if (domain == SourceKind::kSphere) {
    if (n <= 2) return 40;
    if (n == 3) return 16;
    return n == 4 ? 8 : 6;
  }
  if (domain == SourceKind::kEuclidean) return n <= 3 ? 12 : 6;
  return n <= 3 ? 32 : 10;
}

QuadratureRule make_rule(const Immersion& imm, int nodes_per_axis) {
  const int count = nodes_per_axis > 0 ? nodes_per_axis : default_nodes_per_axis(imm.source, imm.source_dim);
  switch (imm.source) {
    case SourceKind::kSphere: return sphere_rule(imm.source_dim, count);
    case SourceKind::kTorus: return torus_rule(imm.source_dim, count);
    case SourceKind::kEuclidean: break;
  }
  return ball_rule(imm.source_dim, kDefaultBallRadius, count);
}

double sphere_volume(int n) {
  return 2.0 * std::pow(kPi, 0.5 * (n + 1)) / std::tgamma(0.5 * (n + 1));
}

double round_sphere_volume(const QuadratureRule& rule) {
  std::vector<double> density;
  for (const ChartPoint& p : rule.nodes) density.push_back(round_chart_density(p));
  return kernels::pairwise_dot(rule.weights, density);
}

double integrate(const Immersion& imm, const ChartField& f, const QuadratureRule& rule) {
  require_rule(imm, rule);
  std::vector<double> values;
  values.reserve(rule.size());
  for (const ChartPoint& p : rule.nodes) {
    if (!in_domain(imm, p)) fail(ErrorKind::kOutOfDomain, "quadrature node outside the immersion domain");
    values.push_back(f(p) * metric_data(imm, p).sqrt_det_g);
  }
  return kernels::pairwise_dot(rule.weights, values);
}

EnergyReport energy_report(const Immersion& imm, const QuadratureRule& rule) {
  require_rule(imm, rule);
  const int n = imm.source_dim;
  const std::size_t count = rule.size();
  std::vector<double> hhat_n(count), hhat_2(count), h_2(count), H_2(count), via(count), vol(count);
  for (std::size_t k = 0; k < count; ++k) {
    const GeometryState s = geometry_state(imm, rule.nodes[k], Depth::kPointwise);
    const double dmu = s.metric.sqrt_det_g;
    const double a2 = s.hhat.norm2();
    hhat_n[k] = std::pow(a2, 0.5 * n) * dmu;
    hhat_2[k] = a2 * dmu;
    h_2[k] = s.h.norm2() * dmu;
    H_2[k] = s.H.norm2() * dmu;
    via[k] = (s.h.norm2() - 3.0 * n * n / (n + 2.0) * s.H.norm2()) * dmu;
    vol[k] = dmu;
  }
  EnergyReport r;
  r.immersion = imm.name;
  r.hhat_n = kernels::pairwise_dot(rule.weights, hhat_n);
  r.hhat_2 = kernels::pairwise_dot(rule.weights, hhat_2);
  r.h_2 = kernels::pairwise_dot(rule.weights, h_2);
  r.H_2 = kernels::pairwise_dot(rule.weights, H_2);
  r.hhat_2_from_norm_identity = kernels::pairwise_dot(rule.weights, via);
  r.volume = kernels::pairwise_dot(rule.weights, vol);
  if (rule.domain == SourceKind::kEuclidean) {
    r.growth_limit = r.h_2 / (rule.radius * rule.radius);
    r.growth_note = "R^-2 int_{B_R} |h|^2 at R = " + std::to_string(rule.radius);
  } else {
    r.growth_limit = 0.0;
    r.growth_note = "compact: M_R = M for large R";
  }
  r.nodes_per_axis = rule.nodes_per_axis;
  r.degree = rule.degree;
  r.node_count = count;
  return r;
}

MichaelSimon michael_simon_ratio(const Immersion& imm, const ModelFunction& v, const QuadratureRule& rule) {
  require_rule(imm, rule);
  const int n = imm.source_dim;
  if (n < 2) fail(ErrorKind::kInvalidArgument, "Michael-Simon needs n >= 2");
  const std::size_t count = rule.size();
  std::vector<double> f1(count), f2(count), f3(count), f4(count);
  for (std::size_t k = 0; k < count; ++k) {
    const ChartPoint& p = rule.nodes[k];
    const GeometryState s = geometry_state(imm, p, Depth::kPointwise);
    const double dmu = s.metric.sqrt_det_g;
    const double value = eval_model_function(imm, v, p, 1).value();
    if (value < 0.0) fail(ErrorKind::kInvalidArgument, "test function is negative at a quadrature node");
    const double grad = gradient_norm(imm, v, p);
    const double H = std::sqrt(s.H.norm2());
    f1[k] = std::pow(value, n / (n - 1.0)) * dmu;
    f2[k] = (grad + value * H) * dmu;
    if (n >= 3) {
      f3[k] = std::pow(value, 2.0 * n / (n - 2.0)) * dmu;
      f4[k] = (grad * grad + value * value * H * H) * dmu;
    }
  }
  MichaelSimon m;
  m.lhs = std::pow(kernels::pairwise_dot(rule.weights, f1), (n - 1.0) / n);
  m.rhs = kernels::pairwise_dot(rule.weights, f2);
  if (n >= 3) {
    m.has_sobolev = true;
    m.sobolev_lhs = std::pow(kernels::pairwise_dot(rule.weights, f3), (n - 2.0) / n);
    m.sobolev_rhs = kernels::pairwise_dot(rule.weights, f4);
  }
  return m;
}

double ball_growth_ratio(const Immersion& imm, double radius, int nodes_per_axis) {
  if (imm.source != SourceKind::kEuclidean) fail(ErrorKind::kInvalidArgument, "ball growth needs an immersion of R^n");
  return energy_report(imm, ball_rule(imm.source_dim, radius, nodes_per_axis)).growth_limit;
}

}  // namespace whitney
