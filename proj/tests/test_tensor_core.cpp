#include <doctest.h>

#include <cmath>
#include <random>

#include "whitney/algebra.hpp"
#include "whitney/identities.hpp"

using namespace whitney;
namespace alg = whitney::algebra;

namespace {

CubicSymTensor torus_h() {
  CubicSymTensor h(2);
  h.set(0, 0, 0, 1.0);
  h.set(1, 1, 1, 1.0);
  return h;
}

RealTensor identity(int n) {
  RealTensor I(n, 2);
  for (int i = 0; i < n; ++i) I(i, i) = 1.0;
  return I;
}

}  // namespace

TEST_CASE("c_tensor examples") {
  const CubicSymTensor zero = alg::c_tensor(VectorField1(3));
  CHECK(zero.norm2() == 0.0);

  const CubicSymTensor c = alg::c_tensor(VectorField1(std::vector<double>{1.0, 0.0}));
  CHECK(c(0, 0, 0) == doctest::Approx(1.5));
  CHECK(c(0, 1, 1) == doctest::Approx(0.5));
  CHECK(c(1, 0, 1) == doctest::Approx(0.5));
  CHECK(c.symmetry_defect() == 0.0);

  std::mt19937_64 rng(5);
  for (int n = 2; n <= 5; ++n) {
    const VectorField1 H = alg::random_vector(n, rng);
    const auto tr = alg::c_tensor(H).trace();
    for (int m = 0; m < n; ++m) CHECK(tr[m] == doctest::Approx(n * H[m]).epsilon(1e-14));
  }
}

TEST_CASE("tracefree_part examples") {
  std::mt19937_64 rng(6);
  const VectorField1 H = alg::random_vector(3, rng);
  CHECK(alg::tracefree_part(alg::c_tensor(H), H).norm2() < 1e-28);

  const CubicSymTensor h = torus_h();
  const VectorField1 Ht = alg::mean_curvature(h);
  CHECK(Ht[0] == doctest::Approx(0.5));
  CHECK(Ht[1] == doctest::Approx(0.5));
  const CubicSymTensor hhat = alg::tracefree_part(h, Ht);
  CHECK(hhat(0, 0, 0) == doctest::Approx(0.25));
  CHECK(hhat(0, 1, 1) == doctest::Approx(-0.25));
  CHECK(hhat(1, 0, 1) == doctest::Approx(-0.25));
  CHECK(hhat(1, 1, 1) == doctest::Approx(0.25));
  CHECK(hhat.norm2() == doctest::Approx(0.5));
  CHECK(h.norm2() - 3.0 * 4.0 / 4.0 * Ht.norm2() == doctest::Approx(0.5));

  for (int n = 2; n <= 5; ++n) {
    const CubicSymTensor r = alg::random_cubic(n, rng);
    const VectorField1 Hr = alg::mean_curvature(r);
    const CubicSymTensor rh = alg::tracefree_part(r, Hr);
    CHECK(std::abs(rh.norm2() - r.norm2() + 3.0 * n * n / (n + 2.0) * Hr.norm2()) < 1e-12 * (1.0 + r.norm2()));
    for (double t : rh.trace()) CHECK(std::abs(t) < 1e-10);
    const CubicSymTensor again = alg::tracefree_part(rh, VectorField1(n));
    CHECK(max_abs_diff(again.raw(), rh.raw()) == 0.0);
  }

  VectorField1 wrong(std::vector<double>{0.1, 0.5});
  CHECK_THROWS_AS(alg::tracefree_part(h, wrong), Error);
}

TEST_CASE("tri-symmetric acceptance") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> d(0.0, 1.0);
  for (int n = 2; n <= 5; ++n) {
    RealTensor raw(n, 3);
    for (double& v : raw.flat()) v = d(rng);
    CHECK_THROWS_AS(CubicSymTensor{raw}, Error);
    const CubicSymTensor s = CubicSymTensor::symmetrized(raw);
    CHECK_NOTHROW(CubicSymTensor{s.raw()});
    CHECK(s.symmetry_defect() == 0.0);
  }
  RealTensor T(2, 2);
  T(0, 0) = 1.0;
  CHECK_THROWS_AS(SymTraceFree2{T}, Error);
  T(1, 1) = -1.0;
  CHECK_NOTHROW(SymTraceFree2{T});
}

TEST_CASE("contraction identities") {
  std::mt19937_64 rng(8);
  for (const auto& r : alg::contraction_identities(CubicSymTensor(3), alg::random_vector(3, rng))) {
    CAPTURE(r.name);
    CHECK(r.residual() == 0.0);
  }
  for (const auto& r : alg::contraction_identities(alg::random_tracefree(3, rng), VectorField1(3))) {
    CAPTURE(r.name);
    CHECK(r.lhs == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(r.rhs == doctest::Approx(0.0).epsilon(1e-14));
  }
  for (int n = 2; n <= 5; ++n) {
    CHECK(identities::contraction_identity_suite(n, 200, rng) < 1e-10);
    CHECK(identities::curvature_closed_form_suite(n, 200, rng) < 1e-10);
  }
  RealTensor bad(2, 3);
  bad(0, 0, 1) = 1.0;
  CHECK_THROWS_AS(alg::contraction_identities(CubicSymTensor::symmetrized(bad), VectorField1(2)), Error);
}

TEST_CASE("Li-Li examples") {
  const RealTensor zero(2, 2);
  const RealTensor z2[] = {zero, zero};
  const auto r0 = alg::li_li_check(z2);
  CHECK(r0.lhs == 0.0);
  CHECK(r0.rhs == 0.0);
  const RealTensor ii[] = {identity(2), identity(2)};
  const auto r1 = alg::li_li_check(ii);
  CHECK(r1.lhs == doctest::Approx(16.0));
  CHECK(r1.rhs == doctest::Approx(24.0));
  std::mt19937_64 rng(9);
  CHECK(identities::li_li_suite(2000, 5, 5, rng) <= 1e-12);
  const RealTensor one[] = {identity(2)};
  CHECK_THROWS_AS(alg::li_li_check(one), Error);
  RealTensor asym(2, 2);
  asym(0, 1) = 1.0;
  const RealTensor bad[] = {asym, identity(2)};
  CHECK_THROWS_AS(alg::li_li_check(bad), Error);
}

TEST_CASE("spectral summary") {
  std::mt19937_64 rng(10);
  const auto s0 = alg::spectral_summary(alg::random_tracefree(3, rng), VectorField1(3));
  for (double l : s0.lambdas) CHECK(l == doctest::Approx(0.0));
  CHECK(s0.s_h == doctest::Approx(0.0));
  const auto s1 = alg::spectral_summary(CubicSymTensor(3), alg::random_vector(3, rng));
  for (double l : s1.lambdas) CHECK(l == 0.0);
  for (double s : s1.s_star) CHECK(s == 0.0);

  for (int n = 2; n <= 5; ++n) {
    const CubicSymTensor hhat = alg::random_tracefree(n, rng);
    const VectorField1 H = alg::random_vector(n, rng);
    const auto s = alg::spectral_summary(hhat, H);
    double brute = 0.0;
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        double m = 0.0;
        for (int l = 0; l < n; ++l) m += hhat(l, j, i) * H[l];
        brute += m * m;
      }
    CHECK(std::abs(s.s_h - brute) < 1e-10 * (1.0 + brute));
    double sum_s = 0.0;
    for (double v : s.s_star) sum_s += v;
    CHECK(sum_s == doctest::Approx(hhat.norm2()).epsilon(1e-12));
    for (std::size_t k = 1; k < s.lambdas.size(); ++k) CHECK(s.lambdas[k - 1] <= s.lambdas[k]);
    // The cubic and quadratic Simons contractions reduce to the spectral data.
    const auto t = alg::simons_terms(hhat, H);
    double lam2 = 0.0, lam_s = 0.0;
    for (int i = 0; i < n; ++i) {
      lam2 += s.lambdas[i] * s.lambdas[i];
      lam_s += s.lambdas[i] * s.s_star[i];
    }
    CHECK(t.quadratic == doctest::Approx(lam2).epsilon(1e-10));
    CHECK(t.cubic == doctest::Approx(lam_s).epsilon(1e-10));
  }
}

TEST_CASE("Jacobi eigen-solver reconstructs the matrix") {
  std::mt19937_64 rng(12);
  for (int n = 1; n <= 6; ++n) {
    const RealTensor M = alg::random_symmetric(n, rng);
    const auto eig = alg::jacobi_eigen(M);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double v = 0.0;
        for (int k = 0; k < n; ++k) v += eig.vectors(i, k) * eig.values[k] * eig.vectors(j, k);
        CHECK(v == doctest::Approx(M(i, j)).epsilon(1e-12));
      }
  }
}

TEST_CASE("rotation equivariance and algebraic Simons bound") {
  std::mt19937_64 rng(13);
  for (int n = 2; n <= 5; ++n) {
    CHECK(identities::rotation_equivariance_suite(n, 100, rng) < 1e-10);
    CHECK(identities::simons_algebraic_suite(n, 200, rng) >= -1e-10);
    CHECK(identities::norm_identity_suite(n, 200, rng) < 1e-12);
  }
  const RealTensor Q = alg::random_orthogonal(4, rng);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      double v = 0.0;
      for (int k = 0; k < 4; ++k) v += Q(i, k) * Q(j, k);
      CHECK(v == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-14));
    }
}

TEST_CASE("torus Simons curvature block cancels with the trace-of-square commutator") {
  const CubicSymTensor h = torus_h();
  const VectorField1 H = alg::mean_curvature(h);
  const CubicSymTensor hhat = alg::tracefree_part(h, H);
  const auto t = alg::simons_terms(hhat, H);
  CHECK(std::abs(t.curvature_block(0.0)) < 1e-12);
  CHECK(t.commutator == doctest::Approx(-t.commutator_norm));
}
