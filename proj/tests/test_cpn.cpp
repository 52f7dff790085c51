#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "whitney/algebra.hpp"
#include "whitney/cpn.hpp"
#include "whitney/identities.hpp"

using namespace whitney;
using cd = std::complex<double>;

namespace {

double projective_overlap(const std::vector<cd>& a, const std::vector<cd>& b) {
  cd s = 0.0;
  double na = 0.0, nb = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    s += std::conj(a[k]) * b[k];
    na += std::norm(a[k]);
    nb += std::norm(b[k]);
  }
  return std::abs(s) / std::sqrt(na * nb);
}

}  // namespace

TEST_CASE("Whitney sphere in CP^n: representatives") {
  const Immersion w = make_whitney_cpn(1.0, 2);
  const std::vector<double> x = {1.0, 0.0, 0.0};
  const auto z = homogeneous_point(w, chart_from_model(w, x));
  const double ch = std::cosh(1.0), sh = std::sinh(1.0);
  // Direct substitution at x_{n+1} = 0: (x_j / ch, sh ch / ch^2).
  const std::vector<cd> want = {1.0 / ch, 0.0, sh / ch};
  CHECK(projective_overlap(z, want) == doctest::Approx(1.0).epsilon(1e-14));

  const auto za = homogeneous_point(w, chart_from_model(w, std::vector<double>{0.6, 0.8, 0.0}));
  const auto zb = homogeneous_point(w, chart_from_model(w, std::vector<double>{-0.6, -0.8, 0.0}));
  CHECK(projective_overlap(za, zb) < 1.0 - 1e-3);

  std::mt19937_64 rng(31);
  for (const ChartPoint& p : sample_points(make_whitney_cpn(0.5, 3), 200, rng)) {
    double norm = 0.0;
    for (const cd& c : homogeneous_point(make_whitney_cpn(0.5, 3), p)) norm += std::norm(c);
    CHECK(std::abs(norm - 1.0) < 1e-12);
  }
  CHECK_THROWS_AS(make_whitney_cpn(0.0, 2), Error);
  CHECK_THROWS_AS(make_whitney_cpn(-1.0, 2), Error);
}

TEST_CASE("RP^n is totally geodesic with sectional curvature 1") {
  std::mt19937_64 rng(32);
  for (int n = 2; n <= 3; ++n) {
    const Immersion rp = make_rpn(n);
    for (const ChartPoint& p : sample_points(rp, 10, rng)) {
      const GeometryState s = geometry_state(rp, p, Depth::kWithDerivatives);
      CHECK(s.h.norm2() < 1e-18);
      CHECK(s.H.norm2() < 1e-18);
      CHECK(s.hhat.norm2() < 1e-18);
      CHECK(s.c_amb == 1.0);
      const RealTensor G = algebra::gauss_curvature(s.h, 1.0);
      CHECK(G(0, 1, 0, 1) == doctest::Approx(1.0));
      CHECK(max_abs_diff(s.R, G) < 1e-6);
      CHECK(max_abs_diff(s.R_normal, G) < 1e-6);
    }
  }
}

TEST_CASE("Whitney spheres in CP^n have vanishing hhat and T") {
  std::mt19937_64 rng(33);
  for (int n : {2, 3})
    for (double theta : {0.5, 1.0}) {
      const Immersion w = make_whitney_cpn(theta, n);
      for (const ChartPoint& p : sample_points(w, 30, rng)) {
        const GeometryState s = geometry_state(w, p, Depth::kWithDerivatives);
        CHECK(std::sqrt(s.hhat.norm2()) < 1e-6);
        CHECK(std::sqrt(s.T.norm2()) < 1e-6);
        CHECK(s.frame.lagrangian_defect < 1e-10);
        CHECK(identities::gauss_equation(s) < 1e-5);
        CHECK(identities::ricci_equation(s) < 1e-5);
      }
    }
}

TEST_CASE("horizontal lift") {
  std::mt19937_64 rng(34);
  const Immersion w = make_whitney_cpn(1.0, 2);
  for (const ChartPoint& p : sample_points(w, 20, rng)) {
    const auto lift = lifted_components(w, p, 3);
    CHECK(horizontality_residual(lift) < 1e-9);
    double norm = 0.0;
    for (const Jet& c : lift) norm += c.value() * c.value();
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("projective gauge invariance") {
  std::mt19937_64 rng(35);
  const Immersion w = make_whitney_cpn(0.7, 2);
  const Immersion shifted = rephase(w, [](std::span<const Jet> x) { return 0.8 * x[0] - sin(x[1] * x[2]) + 0.3; });
  for (const ChartPoint& p : sample_points(w, 10, rng)) {
    const GeometryState a = geometry_state(w, p, Depth::kFull);
    const GeometryState b = geometry_state(shifted, p, Depth::kFull);
    CHECK(max_abs_diff(a.h.raw(), b.h.raw()) < 1e-8);
    CHECK(max_abs_diff(a.grad_h, b.grad_h) < 1e-8);
    CHECK(max_abs_diff(a.R, b.R) < 1e-8);
    CHECK(max_abs_diff(a.metric.g, b.metric.g) < 1e-8);
    CHECK(std::abs(a.laplacian_hhat_norm2 - b.laplacian_hhat_norm2) < 1e-8);
  }
}

TEST_CASE("C^n families are rejected by the CP^n path") {
  CHECK_THROWS_AS(cpn_geometry_state(make_product_torus({1.0, 1.0}), ChartPoint{0, {0.0, 0.0}}, Depth::kPointwise),
                  Error);
}
