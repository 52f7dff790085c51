#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "whitney/quadrature.hpp"

using namespace whitney;

namespace {

constexpr double kPi = std::numbers::pi;

void check_reports_close(const EnergyReport& a, const EnergyReport& b, double tol) {
  CHECK(std::abs(a.hhat_n - b.hhat_n) < tol);
  CHECK(std::abs(a.hhat_2 - b.hhat_2) < tol);
  CHECK(std::abs(a.h_2 - b.h_2) < tol);
  CHECK(std::abs(a.H_2 - b.H_2) < tol);
  CHECK(std::abs(a.volume - b.volume) < tol);
}

}  // namespace

TEST_CASE("Gauss-Legendre integrates polynomials exactly") {
  std::vector<double> x, w;
  gauss_legendre(7, -1.0, 2.0, x, w);
  double s = 0.0;
  for (int i = 0; i < 7; ++i) s += w[i] * std::pow(x[i], 13);
  CHECK(s == doctest::Approx((std::pow(2.0, 14) - 1.0) / 14.0).epsilon(1e-13));
  for (int i = 1; i < 7; ++i) CHECK(x[i - 1] < x[i]);
  CHECK_THROWS_AS(gauss_legendre(0, 0.0, 1.0, x, w), Error);
}

TEST_CASE("rule invariants") {
  for (int n = 1; n <= 5; ++n) {
    const QuadratureRule s = sphere_rule(n, n <= 3 ? 30 : 12);
    double smallest = s.weights.front();
    for (double w : s.weights) smallest = std::min(smallest, w);
    CHECK(smallest > 0.0);
    CHECK(round_sphere_volume(s) == doctest::Approx(sphere_volume(n)).epsilon(1e-8));
    const QuadratureRule t = torus_rule(n, 6);
    double sum = 0.0;
    for (double w : t.weights) sum += w;
    CHECK(sum == doctest::Approx(std::pow(2.0 * kPi, n)).epsilon(1e-13));
  }
  CHECK(sphere_volume(2) == doctest::Approx(4.0 * kPi));
  CHECK(sphere_rule(2, 16).degree >= 30);
  CHECK(make_rule(make_whitney_cn(1.0, {}, 2)).degree >= 30);
  CHECK(make_rule(make_whitney_cn(1.0, {}, 3)).degree >= 30);
}

TEST_CASE("integrate examples") {
  const Immersion t = make_product_torus({1.0, 1.0});
  const ChartField one = [](const ChartPoint&) { return 1.0; };
  CHECK(integrate(t, one, make_rule(t)) == doctest::Approx(4.0 * kPi * kPi).epsilon(1e-12));
  CHECK(std::abs(integrate(t, one, torus_rule(2, 16)) - integrate(t, one, torus_rule(2, 32))) < 1e-8);
  const ChartField hh = [&](const ChartPoint& p) { return geometry_state(t, p, Depth::kPointwise).hhat.norm2(); };
  CHECK(integrate(t, hh, torus_rule(2, 8)) == doctest::Approx(2.0 * kPi * kPi).epsilon(1e-12));

  const Immersion t12 = make_product_torus({1.0, 2.0});
  CHECK(integrate(t12, one, torus_rule(2, 4)) == doctest::Approx(8.0 * kPi * kPi).epsilon(1e-12));
  CHECK_THROWS_AS(integrate(t, one, sphere_rule(2, 4)), Error);
  CHECK_THROWS_AS(integrate(t, one, torus_rule(3, 4)), Error);
}

TEST_CASE("energy report examples") {
  const Immersion t = make_product_torus({1.0, 1.0});
  const EnergyReport e = energy_report(t, make_rule(t));
  CHECK(std::abs(e.hhat_2 - 2.0 * kPi * kPi) < 1e-6);
  CHECK(std::abs(e.h_2 - 8.0 * kPi * kPi) < 1e-6);
  CHECK(e.growth_limit == 0.0);
  CHECK(e.hhat_2 <= e.h_2);
  CHECK(std::abs(e.hhat_2 - e.hhat_2_from_norm_identity) < 1e-8);

  for (int n = 2; n <= 3; ++n)
    for (double r : {0.5, 1.0, 2.0}) {
      std::vector<std::complex<double>> A = {{0.3, -1.0}, {0.5, 0.5}, {0.0, 2.0}};
      A.resize(n);
      const Immersion w = make_whitney_cn(r, A, n);
      const EnergyReport ew = energy_report(w, make_rule(w, 10));
      CHECK(ew.hhat_n < 1e-7);
      CHECK(ew.volume > 0.0);
    }

  // Torus with unequal radii: |hhat|^2 = (n-1)/(n+2) sum 1/r_i^2, area (2 pi)^2 r_1 r_2.
  for (double s : {1.0, 2.0, 4.0}) {
    const Immersion ts = make_product_torus({1.0, s});
    const EnergyReport es = energy_report(ts, make_rule(ts));
    const double closed = 0.25 * (1.0 + 1.0 / (s * s)) * 4.0 * kPi * kPi * s;
    CHECK(std::abs(es.hhat_2 - closed) < 1e-6);
  }
}

TEST_CASE("energy invariances") {
  const Immersion pw = make_perturbed_whitney(1.0, 0.05, 1, 2);
  const QuadratureRule rule = make_rule(pw);
  const EnergyReport base = energy_report(pw, rule);
  CHECK(base.hhat_n > 0.0);
  CHECK(std::abs(base.hhat_2 - base.hhat_2_from_norm_identity) < 1e-8);
  for (double lambda : {0.5, 2.0, 10.0}) {
    const EnergyReport d = energy_report(dilate(pw, lambda), rule);
    CHECK(std::abs(d.hhat_n - base.hhat_n) < 1e-8);
  }
  std::mt19937_64 rng(51);
  const Immersion moved = unitary_motion(pw, random_unitary(2, rng), {{0.4, -0.1}, {2.0, 1.0}});
  const EnergyReport m = energy_report(moved, rule);
  check_reports_close(base, m, 1e-10);
  const EnergyReport fine = energy_report(pw, make_rule(pw, 80));
  check_reports_close(base, fine, 1e-6);
}

TEST_CASE("Michael-Simon diagnostic") {
  const Immersion t = make_product_torus({1.0, 1.0});
  const QuadratureRule rule = make_rule(t);
  const ModelFunction zero = [](std::span<const Jet> x) { return Jet::constant_like(x[0], 0.0); };
  const MichaelSimon z = michael_simon_ratio(t, zero, rule);
  CHECK(z.lhs == 0.0);
  CHECK(z.rhs == 0.0);
  const ModelFunction one = [](std::span<const Jet> x) { return Jet::constant_like(x[0], 1.0); };
  const MichaelSimon o = michael_simon_ratio(t, one, rule);
  CHECK(o.lhs == doctest::Approx(2.0 * kPi).epsilon(1e-12));
  CHECK(o.rhs == doctest::Approx(4.0 * kPi * kPi / std::sqrt(2.0)).epsilon(1e-12));
  CHECK_FALSE(o.has_sobolev);

  const Immersion w = make_whitney_cn(1.0, {}, 3);
  const ModelFunction v = [](std::span<const Jet> x) { return 1.0 + x[3]; };
  const MichaelSimon ms = michael_simon_ratio(w, v, make_rule(w));
  CHECK(ms.lhs > 0.0);
  CHECK(ms.rhs / ms.lhs == doctest::Approx(5.52180).epsilon(1e-4));
  CHECK(ms.has_sobolev);
  CHECK(ms.sobolev_lhs > 0.0);
  CHECK(ms.sobolev_rhs > 0.0);
  const ModelFunction neg = [](std::span<const Jet> x) { return x[3]; };
  CHECK_THROWS_AS(michael_simon_ratio(w, neg, make_rule(w)), Error);
}

TEST_CASE("plane growth quantity") {
  const Immersion plane = make_lagrangian_plane(2);
  CHECK(ball_growth_ratio(plane, 10.0) == 0.0);
  const EnergyReport e = energy_report(plane, make_rule(plane));
  CHECK(e.volume == doctest::Approx(kPi * 100.0).epsilon(1e-12));
  CHECK(e.growth_limit == 0.0);
  CHECK_THROWS_AS(ball_growth_ratio(make_product_torus({1.0, 1.0}), 1.0), Error);
}
