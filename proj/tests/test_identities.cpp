#include <doctest.h>

#include <cmath>
#include <random>

#include "whitney/algebra.hpp"
#include "whitney/cpn.hpp"
#include "whitney/identities.hpp"

using namespace whitney;
namespace id = whitney::identities;

TEST_CASE("structural residuals") {
  const GeometryState plane = geometry_state(make_lagrangian_plane(2), ChartPoint{0, {0.5, -0.5}}, Depth::kFull);
  CHECK(id::tri_symmetry(plane) == 0.0);
  CHECK(id::codazzi(plane) == 0.0);
  CHECK(id::mean_curvature_derivative_symmetry(plane) == 0.0);
  CHECK(id::maslov_tensor_consistency(plane) == 0.0);
  CHECK(id::gauss_equation(plane) == 0.0);
  CHECK(id::ricci_identity(plane) == 0.0);

  std::mt19937_64 rng(41);
  const Immersion torus = make_product_torus({1.0, 2.0});
  for (const ChartPoint& p : sample_points(torus, 5, rng)) {
    const GeometryState s = geometry_state(torus, p, Depth::kFull);
    CHECK(id::tri_symmetry(s) < 1e-9);
    CHECK(id::codazzi(s) < 1e-9);
    CHECK(id::mean_curvature_derivative_symmetry(s) < 1e-9);
    CHECK(id::maslov_tensor_consistency(s) < 1e-9);
    CHECK(id::ricci_identity(s) < 1e-6);
  }
  const Immersion pw = make_perturbed_whitney(1.0, 0.05, 1, 2);
  for (const ChartPoint& p : sample_points(pw, 20, rng)) {
    const GeometryState s = geometry_state(pw, p, Depth::kWithDerivatives);
    CHECK(id::tri_symmetry(s) < 1e-6);
    CHECK(id::codazzi(s) < 1e-6);
    CHECK(id::mean_curvature_derivative_symmetry(s) < 1e-6);
    CHECK(id::maslov_tensor_consistency(s) < 1e-6);
  }
  for (const ChartPoint& p : sample_points(pw, 10, rng)) {
    CHECK(id::ricci_identity(geometry_state(pw, p, Depth::kFull)) < 1e-4);
  }
}

TEST_CASE("Gauss and Ricci equations") {
  std::mt19937_64 rng(42);
  const Immersion w = make_whitney_cn(1.0, {}, 2);
  for (const ChartPoint& p : sample_points(w, 10, rng)) {
    const GeometryState s = geometry_state(w, p, Depth::kWithDerivatives);
    CHECK(id::gauss_equation(s) < 1e-6);
    CHECK(id::ricci_equation(s) < 1e-6);
  }
  const GeometryState rp = geometry_state(make_rpn(2), ChartPoint{0, {0.3, 0.1}}, Depth::kWithDerivatives);
  const RealTensor rhs = algebra::gauss_curvature(rp.h, 1.0);
  CHECK(rhs(0, 1, 0, 1) == 1.0);
  CHECK(std::abs(rp.R(0, 1, 0, 1) - 1.0) < 1e-6);
  CHECK(id::ricci_equation(rp) < 1e-6);
  const RealTensor normal = id::ricci_equation_rhs(rp.h, 1.0);
  CHECK(normal(0, 1, 0, 1) == doctest::Approx(1.0));
}

TEST_CASE("Simons identity on the product torus") {
  std::mt19937_64 rng(43);
  const Immersion torus = make_product_torus({1.0, 1.0});
  for (const ChartPoint& p : sample_points(torus, 5, rng)) {
    const GeometryState s = geometry_state(torus, p, Depth::kFull);
    const id::SimonsEvaluation e = id::simons(s);
    CHECK(std::abs(e.lhs) < 1e-12);
    CHECK(std::abs(e.rhs) < 1e-9);
    CHECK(std::abs(e.gradient_term) < 1e-12);
    CHECK(std::abs(e.curvature_block) < 1e-9);
    // The four nontrivial curvature terms do not vanish individually.
    const auto t = algebra::simons_terms(s.hhat, s.H);
    CHECK(std::abs(t.commutator) > 1e-3);
    CHECK(t.hhat_norm2 * t.H_norm2 > 1e-3);
    CHECK(e.inequality_margin() >= -1e-9);
    CHECK(std::abs(e.rhs_frobenius) > 1e-3);
  }
  const auto report = id::check_immersion(torus, sample_points(torus, 3, rng));
  CHECK(report.commutator_convention == "trace_of_square");
  CHECK(report.commutator_alt_residual > 1e-3);
}

TEST_CASE("Simons identity on Whitney and perturbed Whitney") {
  std::mt19937_64 rng(44);
  const Immersion w = make_whitney_cn(1.0, {}, 3);
  for (const ChartPoint& p : sample_points(w, 5, rng)) {
    const GeometryState s = geometry_state(w, p, Depth::kFull);
    const id::SimonsEvaluation e = id::simons(s);
    CHECK(std::abs(e.lhs) < 1e-12);
    CHECK(std::abs(e.rhs) < 1e-12);
    CHECK(std::abs(e.lower_bound) < 1e-12);
    CHECK(std::abs(e.inequality_margin()) < 1e-12);
  }
  const Immersion pw = make_perturbed_whitney(1.0, 0.05, 1, 2);
  for (const ChartPoint& p : sample_points(pw, 5, rng)) {
    const GeometryState s = geometry_state(pw, p, Depth::kFull);
    const id::SimonsEvaluation e = id::simons(pw, s);
    CHECK(e.residual() < 1e-9);
    CHECK(e.residual_fd() < 1e-3);
    CHECK(e.inequality_margin() >= -1e-9);
  }
}

TEST_CASE("algebraic lower bound and intermediate diagnostic") {
  std::mt19937_64 rng(45);
  for (int n = 2; n <= 5; ++n) CHECK(id::simons_algebraic_suite(n, 1000, rng) >= -1e-10);
  const auto rep = id::check_immersion(make_perturbed_whitney(1.0, 0.05, 1, 2),
                                       sample_points(make_perturbed_whitney(1.0, 0.05, 1, 2), 5, rng));
  CHECK(rep.diagnostics.count("simons_intermediate_margin_min") == 1);
  CHECK(rep.diagnostics.count("simons_algebraic_margin_min") == 1);
  CHECK(rep.diagnostics.at("simons_algebraic_margin_min") >= -1e-10);
}

TEST_CASE("check_immersion passes on every built-in family") {
  std::mt19937_64 rng(46);
  const std::vector<Immersion> families = {
      make_lagrangian_plane(2),       make_product_torus({1.0, 2.0}), make_whitney_cn(1.5, {{0.2, 0.1}, {0.0, 1.0}}, 2),
      make_perturbed_whitney(1.0, 0.05, 1, 2), make_whitney_cpn(1.0, 2), make_rpn(2)};
  for (const Immersion& imm : families) {
    CAPTURE(imm.name);
    const auto rep = id::check_immersion(imm, sample_points(imm, 5, rng));
    for (const id::Check& c : rep.checks) {
      CAPTURE(c.name);
      CHECK(c.pass());
      CHECK(c.samples > 0);
    }
    CHECK(rep.all_pass());
  }
}

TEST_CASE("identity residuals are frame-gauge invariant") {
  std::mt19937_64 rng(47);
  const Immersion pw = make_perturbed_whitney(1.0, 0.05, 1, 3);
  for (const ChartPoint& p : sample_points(pw, 3, rng)) {
    const GeometryState a = geometry_state(pw, p, Depth::kFull);
    GeometryOptions opt;
    opt.gauge = algebra::random_orthogonal(3, rng);
    const GeometryState b = geometry_state(pw, p, Depth::kFull, opt);
    CHECK(std::abs(id::norm_identity(a) - id::norm_identity(b)) < 1e-9);
    CHECK(std::abs(id::codazzi(a) - id::codazzi(b)) < 1e-9);
    CHECK(std::abs(id::gauss_equation(a) - id::gauss_equation(b)) < 1e-9);
    CHECK(std::abs(id::ricci_identity(a) - id::ricci_identity(b)) < 1e-9);
    CHECK(std::abs(id::simons(a).rhs - id::simons(b).rhs) < 1e-9);
    CHECK(std::abs(id::hhat_dot_grad_T(a) - id::hhat_dot_grad_T(b)) < 1e-9);
  }
}

TEST_CASE("tolerance ladder and report bookkeeping") {
  id::Tolerances tol;
  CHECK(tol.rung(0) == 1e-9);
  CHECK(tol.rung(1) == 1e-6);
  CHECK(tol.rung(2) == 1e-4);
  tol.scale = 10.0;
  CHECK(tol.rung(1) == doctest::Approx(1e-5));
  id::IdentityReport r;
  r.record("a", 1e-12, 1e-9);
  r.record("a", 1e-8, 1e-9);
  r.record("b", 0.0, 1e-9);
  CHECK(r.find("a")->samples == 2);
  CHECK_FALSE(r.find("a")->pass());
  CHECK(r.find("b")->pass());
  CHECK_FALSE(r.all_pass());
  CHECK(r.find("missing") == nullptr);
  r.record("nan", std::nan(""), 1.0);
  CHECK_FALSE(r.find("nan")->pass());
}
