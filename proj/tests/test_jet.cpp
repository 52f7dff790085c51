#include <doctest.h>

#include <cmath>

#include "whitney/jet.hpp"

using namespace whitney;

TEST_CASE("layout sizes count monomials by degree") {
  const JetLayout& l2 = JetLayout::for_vars(2);
  CHECK(l2.size(0) == 1);
  CHECK(l2.size(1) == 3);
  CHECK(l2.size(2) == 6);
  CHECK(l2.size(4) == 15);
  const JetLayout& l3 = JetLayout::for_vars(3);
  CHECK(l3.size(4) == 35);
  const int e[] = {1, 2, 0};
  const std::size_t idx = l3.index(e);
  CHECK(l3.degree(idx) == 3);
  CHECK(l3.factorial(idx) == 2.0);
}

TEST_CASE("partials of elementary functions match closed forms") {
  const JetLayout& layout = JetLayout::for_vars(2);
  const double x0 = 0.4, y0 = -0.3;
  const Jet x = Jet::variable(layout, 4, 0, x0);
  const Jet y = Jet::variable(layout, 4, 1, y0);
  const Jet f = sin(x) * exp(y);
  const int d00[] = {0, 0}, d10[] = {1, 0}, d21[] = {2, 1}, d13[] = {1, 3}, d04[] = {0, 4};
  CHECK(f.partial(d00) == doctest::Approx(std::sin(x0) * std::exp(y0)).epsilon(1e-15));
  CHECK(f.partial(d10) == doctest::Approx(std::cos(x0) * std::exp(y0)).epsilon(1e-15));
  CHECK(f.partial(d21) == doctest::Approx(-std::sin(x0) * std::exp(y0)).epsilon(1e-14));
  CHECK(f.partial(d13) == doctest::Approx(std::cos(x0) * std::exp(y0)).epsilon(1e-14));
  CHECK(f.partial(d04) == doctest::Approx(std::sin(x0) * std::exp(y0)).epsilon(1e-14));

  const Jet r = sqrt(1.0 + square(x) + square(y));
  const double s = std::sqrt(1.0 + x0 * x0 + y0 * y0);
  const int d20[] = {2, 0};
  CHECK(r.partial(d10) == doctest::Approx(x0 / s).epsilon(1e-15));
  CHECK(r.partial(d20) == doctest::Approx((1.0 + y0 * y0) / (s * s * s)).epsilon(1e-14));

  const Jet q = 1.0 / (2.0 + x);
  const int d30[] = {3, 0};
  CHECK(q.partial(d30) == doctest::Approx(-6.0 / std::pow(2.0 + x0, 4)).epsilon(1e-14));

  const Jet hyp = square(cosh(x)) - square(sinh(x));
  CHECK(hyp.partial(d20) == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(hyp.value() == doctest::Approx(1.0));
}

TEST_CASE("derivative lowers the order and commutes") {
  const JetLayout& layout = JetLayout::for_vars(2);
  const Jet x = Jet::variable(layout, 4, 0, 0.2);
  const Jet y = Jet::variable(layout, 4, 1, 0.9);
  const Jet f = cos(x * y) + x * x * y;
  const Jet fxy = f.derivative(0).derivative(1);
  const Jet fyx = f.derivative(1).derivative(0);
  CHECK(fxy.order() == 2);
  for (std::size_t k = 0; k < fxy.coefficients().size(); ++k) {
    CHECK(fxy.coefficients()[k] == doctest::Approx(fyx.coefficients()[k]).epsilon(1e-14));
  }
  const int d11[] = {1, 1};
  CHECK(fxy.value() == doctest::Approx(f.partial(d11)).epsilon(1e-14));
}

TEST_CASE("mixed-order arithmetic truncates to the lower order") {
  const JetLayout& layout = JetLayout::for_vars(1);
  const Jet a = Jet::variable(layout, 4, 0, 1.0);
  const Jet b = Jet::variable(layout, 2, 0, 1.0);
  const Jet c = a * b;
  CHECK(c.order() == 2);
  CHECK(c.truncated(1).coefficients().size() == 2);
}

TEST_CASE("jet errors") {
  const JetLayout& layout = JetLayout::for_vars(2);
  const Jet x = Jet::variable(layout, 2, 0, 0.0);
  const int d30[] = {3, 0};
  CHECK_THROWS_AS(x.partial(d30), Error);
  CHECK_THROWS_AS(Jet::from_coefficients(layout, 2, {1.0, 2.0}), Error);
  CHECK_THROWS_AS(Jet::constant(layout, 2, 1.0).derivative(0).derivative(0).derivative(0), Error);
}
