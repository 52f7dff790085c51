#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "whitney/algebra.hpp"
#include "whitney/geometry.hpp"

using namespace whitney;

namespace {

double frob2(const RealTensor& t) { return norm2(t); }

double max_abs(const RealTensor& t) {
  double m = 0.0;
  for (double v : t.flat()) m = std::max(m, std::abs(v));
  return m;
}

struct Scalars {
  double h2, hhat2, H2, T2, grad_hhat2, grad_h2, R2, lap;
};

Scalars scalars(const GeometryState& s) {
  return {s.h.norm2(), s.hhat.norm2(), s.H.norm2(), s.T.norm2(), frob2(s.grad_hhat), frob2(s.grad_h), frob2(s.R),
          s.laplacian_hhat_norm2};
}

void check_same(const Scalars& a, const Scalars& b, double tol) {
  CHECK(std::abs(a.h2 - b.h2) < tol);
  CHECK(std::abs(a.hhat2 - b.hhat2) < tol);
  CHECK(std::abs(a.H2 - b.H2) < tol);
  CHECK(std::abs(a.T2 - b.T2) < tol);
  CHECK(std::abs(a.grad_hhat2 - b.grad_hhat2) < tol);
  CHECK(std::abs(a.grad_h2 - b.grad_h2) < tol);
  CHECK(std::abs(a.R2 - b.R2) < tol);
  CHECK(std::abs(a.lap - b.lap) < tol);
}

}  // namespace

TEST_CASE("Lagrangian plane is flat and totally geodesic") {
  const Immersion plane = make_lagrangian_plane(3);
  const GeometryState s = geometry_state(plane, ChartPoint{0, {0.2, -0.4, 0.9}}, Depth::kFull);
  CHECK(s.h.norm2() == 0.0);
  CHECK(s.H.norm2() == 0.0);
  CHECK(s.hhat.norm2() == 0.0);
  CHECK(s.T.norm2() == 0.0);
  CHECK(max_abs(s.R) == 0.0);
  for (double a : maslov_one_form(s).alpha) CHECK(a == 0.0);
}

TEST_CASE("Whitney spheres have vanishing trace-free second fundamental form") {
  std::mt19937_64 rng(21);
  for (int n = 2; n <= 5; ++n) {
    const Immersion w = make_whitney_cn(1.0, {}, n);
    for (const ChartPoint& p : sample_points(w, 50, rng)) {
      const GeometryState s = geometry_state(w, p, Depth::kWithDerivatives);
      CHECK(std::sqrt(s.hhat.norm2()) < 1e-8);
      CHECK(std::sqrt(s.T.norm2()) < 1e-8);
      CHECK(s.H.norm2() > 0.0);
    }
  }
}

TEST_CASE("product torus closed forms") {
  const std::vector<double> radii = {1.0, 2.0, 0.5};
  const Immersion t = make_product_torus(radii);
  double inv2 = 0.0;
  for (double r : radii) inv2 += 1.0 / (r * r);
  std::mt19937_64 rng(22);
  for (const ChartPoint& p : sample_points(t, 10, rng)) {
    const GeometryState s = geometry_state(t, p, Depth::kFull);
    CHECK(s.h.norm2() == doctest::Approx(inv2).epsilon(1e-12));
    CHECK(s.H.norm2() == doctest::Approx(inv2 / 9.0).epsilon(1e-12));
    CHECK(max_abs(s.grad_h) < 1e-12);
    CHECK(std::sqrt(s.T.norm2()) < 1e-9);
    CHECK(max_abs(s.R) < 1e-12);
    CHECK(max_abs(algebra::gauss_curvature(s.h, 0.0)) < 1e-14);
    CHECK(s.maslov_closedness < 1e-9);
    // Sign convention: h^{i*}_{ii} positive.
    for (int i = 0; i < 3; ++i) CHECK(s.h(i, i, i) == doctest::Approx(1.0 / radii[i]));
  }
}

TEST_CASE("metric data invariants") {
  std::mt19937_64 rng(23);
  const Immersion w = make_perturbed_whitney(1.0, 0.05, 1, 3);
  for (const ChartPoint& p : sample_points(w, 10, rng)) {
    const MetricData m = metric_data(w, p);
    const int n = 3;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        CHECK(m.g(i, j) == m.g(j, i));
        double v = 0.0;
        for (int k = 0; k < n; ++k) v += m.g(i, k) * m.g_inv(k, j);
        CHECK(std::abs(v - (i == j ? 1.0 : 0.0)) < 1e-12);
        for (int k = 0; k < n; ++k) CHECK(m.christoffel(k, i, j) == doctest::Approx(m.christoffel(k, j, i)));
      }
    CHECK(m.sqrt_det_g > 0.0);
    const GeometryState s = geometry_state(w, p, Depth::kPointwise);
    CHECK(s.frame.orthonormality_defect < 1e-12);
    CHECK(s.frame.lagrangian_defect < 1e-10);
  }
}

TEST_CASE("maslov tensor examples") {
  std::mt19937_64 rng(24);
  const Immersion pw = make_perturbed_whitney(1.0, 0.05, 1, 2);
  double largest = 0.0;
  for (const ChartPoint& p : sample_points(pw, 10, rng)) {
    const GeometryState s = geometry_state(pw, p, Depth::kWithDerivatives);
    const SymTraceFree2 T = maslov_tensor(s);
    CHECK(std::abs(T.trace()) < 1e-9);
    CHECK(T.asymmetry() < 1e-9);
    CHECK(max_abs_diff(T.raw(), s.T_from_hhat) < 1e-8);
    largest = std::max(largest, T.norm2());
    CHECK(s.hhat.norm2() > 0.0);
  }
  CHECK(largest > 1e-6);
  const GeometryState pointwise = geometry_state(pw, ChartPoint{0, {0.1, 0.1}}, Depth::kPointwise);
  CHECK_THROWS_AS(maslov_tensor(pointwise), Error);
}

TEST_CASE("intrinsic curvature two ways") {
  std::mt19937_64 rng(25);
  const Immersion w = make_whitney_cn(1.0, {}, 2);
  for (const ChartPoint& p : sample_points(w, 10, rng)) {
    const RealTensor R = intrinsic_curvature(w, p);
    const GeometryState s = geometry_state(w, p, Depth::kPointwise);
    const RealTensor G = algebra::gauss_curvature(s.h, 0.0);
    CHECK(std::abs(R(0, 1, 0, 1) - G(0, 1, 0, 1)) < 1e-6);
    CHECK(max_abs_diff(R, G) < 1e-9);
  }
  CHECK(max_abs(intrinsic_curvature(make_lagrangian_plane(2), ChartPoint{0, {0.3, 0.3}})) == 0.0);
}

TEST_CASE("scalar Laplacian") {
  const Immersion sphere = make_round_sphere(2);
  const ChartPoint p{0, {0.3, -0.2}};
  const ChartField one = [](const ChartPoint&) { return 1.0; };
  CHECK(std::abs(scalar_laplacian(sphere, one, p)) < 1e-9);
  const ChartField z = [&](const ChartPoint& q) { return model_point(sphere, q)[2]; };
  const double f = z(p);
  CHECK(scalar_laplacian(sphere, z, p) == doctest::Approx(-2.0 * f).epsilon(1e-5));
  const ModelFunction zj = [](std::span<const Jet> x) { return x[2]; };
  CHECK(scalar_laplacian(sphere, zj, p) == doctest::Approx(-2.0 * f).epsilon(1e-12));

  const Immersion t = make_product_torus({1.0, 1.0});
  const ChartField hh = [&](const ChartPoint& q) { return geometry_state(t, q, Depth::kPointwise).hhat.norm2(); };
  CHECK(std::abs(scalar_laplacian(t, hh, ChartPoint{0, {0.4, 1.0}})) < 1e-6);

  const Immersion w = make_whitney_cn(1.0, {}, 2);
  CHECK_THROWS_AS(scalar_laplacian(w, one, ChartPoint{0, {1.99999, 0.0}}), Error);
}

TEST_CASE("jet and finite-difference Laplacians of |hhat|^2 agree") {
  const Immersion pw = make_perturbed_whitney(1.0, 0.05, 1, 2);
  const ChartPoint p{0, {0.35, -0.25}};
  const GeometryState s = geometry_state(pw, p, Depth::kFull);
  const ChartField hh = [&](const ChartPoint& q) { return geometry_state(pw, q, Depth::kPointwise).hhat.norm2(); };
  const double fd = scalar_laplacian(pw, hh, p);
  CHECK(std::abs(fd - s.laplacian_hhat_norm2) < 1e-6 * (1.0 + std::abs(fd)));
}

TEST_CASE("Maslov form") {
  std::mt19937_64 rng(26);
  const Immersion w = make_whitney_cn(1.0, {}, 2);
  for (const ChartPoint& p : sample_points(w, 20, rng)) {
    const GeometryState s = geometry_state(w, p, Depth::kWithDerivatives);
    CHECK(s.maslov_closedness < 1e-6);
    CHECK(closedness_residual(w, p) < 1e-6);
    double a2 = 0.0;
    for (double a : maslov_one_form(s).alpha) a2 += a * a;
    CHECK(a2 == doctest::Approx(s.H.norm2()).epsilon(1e-12));
  }
}

TEST_CASE("frame gauge, chart and dilation invariance") {
  std::mt19937_64 rng(27);
  const Immersion pw = make_perturbed_whitney(1.0, 0.05, 1, 3);
  for (const ChartPoint& p : sample_points(pw, 5, rng)) {
    const GeometryState base = geometry_state(pw, p, Depth::kFull);
    GeometryOptions opt;
    opt.gauge = algebra::random_orthogonal(3, rng);
    check_same(scalars(base), scalars(geometry_state(pw, p, Depth::kFull, opt)), 1e-9);
    // Pointwise norm identity.
    CHECK(std::abs(base.hhat.norm2() - base.h.norm2() + 9.0 * 3.0 / 5.0 * base.H.norm2()) < 1e-10);
  }
  const Immersion w = make_perturbed_whitney(1.0, 0.05, 1, 2);
  int tested = 0;
  for (const ChartPoint& p : sample_points(w, 200, rng)) {
    double r2 = 0.0;
    for (double c : p.coords) r2 += c * c;
    if (r2 < 0.3 || r2 > 3.5) continue;
    if (++tested > 10) break;
    const ChartPoint q = chart_transition(w, p, 1 - p.chart_id);
    const GeometryState a = geometry_from_components(eval_jet(w, p, 4).components, 2, 0.0, Depth::kFull);
    const GeometryState b = geometry_from_components(eval_jet(w, q, 4).components, 2, 0.0, Depth::kFull);
    check_same(scalars(a), scalars(b), 1e-9);
  }
  CHECK(tested > 5);
  for (double lambda : {0.5, 2.0, 10.0}) {
    const ChartPoint p{0, {0.2, 0.3}};
    const GeometryState a = geometry_state(w, p, Depth::kPointwise);
    const GeometryState b = geometry_state(dilate(w, lambda), p, Depth::kPointwise);
    CHECK(b.hhat.norm2() == doctest::Approx(a.hhat.norm2() / (lambda * lambda)).epsilon(1e-12));
  }
}

TEST_CASE("non-Lagrangian input is rejected") {
  const Immersion bent = make_lagrangian_plane(2, 0.5);
  try {
    geometry_state(bent, ChartPoint{0, {0.1, 0.2}}, Depth::kPointwise);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kNotLagrangian);
    CHECK(std::string(e.what()).find("Lagrangian condition violated") != std::string::npos);
  }
  CHECK_THROWS_AS(geometry_state(make_round_sphere(2), ChartPoint{0, {0.1, 0.2}}, Depth::kPointwise), Error);
}

TEST_CASE("black-box immersions go through finite differences") {
  const std::vector<double> radii = {1.0, 1.5};
  const Immersion bb = make_black_box("torus_bb", 2, SourceKind::kTorus, AmbientKind::kComplexEuclidean, 2,
                                      [radii](std::span<const double> t, int) {
                                        return std::vector<double>{radii[0] * std::cos(t[0]), radii[0] * std::sin(t[0]),
                                                                   radii[1] * std::cos(t[1]), radii[1] * std::sin(t[1])};
                                      });
  const Immersion exact = make_product_torus(radii);
  const ChartPoint p{0, {0.7, -1.2}};
  const GeometryState a = geometry_state(bb, p, Depth::kWithDerivatives);
  const GeometryState b = geometry_state(exact, p, Depth::kWithDerivatives);
  CHECK(max_abs_diff(a.h.raw(), b.h.raw()) < 1e-6);
  CHECK(max_abs(a.grad_h) < 1e-4);
}
