#include <cmath>

#include "doctest.h"
#include "fluidfluid/errors.hpp"
#include "fluidfluid/quadrature.hpp"

using namespace fluidfluid;

namespace {

double integrate(const TriangleRule& r, int a, int b) {
  double s = 0.0;
  for (std::size_t q = 0; q < r.points.size(); ++q)
    s += r.weights[q] * std::pow(r.points[q].x, a) * std::pow(r.points[q].y, b);
  return s;
}

double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

// Exact monomial integral over the reference triangle: a! b! / (a+b+2)!
double exact(int a, int b) { return factorial(a) * factorial(b) / factorial(a + b + 2); }

}  // namespace

TEST_CASE("reference integrals") {
  const auto& r = quad_rule(5);
  CHECK(integrate(r, 0, 0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(integrate(r, 1, 1) == doctest::Approx(1.0 / 24.0).epsilon(1e-14));
  CHECK(integrate(r, 4, 0) == doctest::Approx(1.0 / 30.0).epsilon(1e-14));
}

TEST_CASE("every rule is exact up to its degree with positive weights") {
  for (int d = 0; d <= 5; ++d) {
    const auto& r = quad_rule(d);
    CHECK(r.degree >= d);
    for (double w : r.weights) CHECK(w > 0.0);
    for (int a = 0; a <= d; ++a)
      for (int b = 0; a + b <= d; ++b) CHECK(std::abs(integrate(r, a, b) - exact(a, b)) <= 1e-15);
  }
}

TEST_CASE("unsupported degree is a configuration error") {
  CHECK_THROWS_AS(quad_rule(6), ConfigError);
  CHECK_THROWS_AS(quad_rule(-1), ConfigError);
}

TEST_CASE("gauss line rules integrate monomials on the unit interval") {
  for (int n = 1; n <= 5; ++n) {
    const auto& r = gauss_line(n);
    for (int k = 0; k <= 2 * n - 1; ++k) {
      double s = 0.0;
      for (std::size_t q = 0; q < r.points.size(); ++q) s += r.weights[q] * std::pow(r.points[q], k);
      CHECK(s == doctest::Approx(1.0 / (k + 1)).epsilon(1e-14));
    }
  }
  CHECK_THROWS_AS(gauss_line(0), ConfigError);
}
