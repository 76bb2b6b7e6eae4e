#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "zaremba/quadrature.hpp"

using namespace zaremba;

namespace {
// Exact integral of x^a y^b over the reference triangle {x,y >= 0, x+y <= 1}:
// a! b! / (a+b+2)!.
double monomial_integral(int a, int b) {
  auto factorial = [](int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
  };
  return factorial(a) * factorial(b) / factorial(a + b + 2);
}
}  // namespace

TEST_CASE("gauss-legendre nodes integrate polynomials exactly") {
  for (int n : {1, 2, 4, 8, 16, 32}) {
    const auto rule = gauss_legendre(n);
    double wsum = 0.0;
    for (const auto& q : rule) wsum += q.w;
    CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));

    // Exact through degree 2n-1; odd powers vanish by symmetry.
    for (int d = 0; d <= 2 * n - 1; ++d) {
      double sum = 0.0;
      for (const auto& q : rule) sum += q.w * std::pow(q.x, d);
      const double exact = d % 2 == 1 ? 0.0 : 2.0 / (d + 1);
      CHECK(sum == doctest::Approx(exact).epsilon(1e-13));
    }
  }
  CHECK_THROWS_AS(gauss_legendre(0), std::invalid_argument);
}

TEST_CASE("triangle rules are exact at their stated degree") {
  for (int order = 1; order <= 12; ++order) {
    const auto rule = triangle_rule(order);
    double wsum = 0.0;
    for (const auto& q : rule) {
      wsum += q.w;
      CHECK(q.l0 == doctest::Approx(1.0 - q.l1 - q.l2).epsilon(1e-12));
      CHECK(q.w > 0.0);
    }
    CHECK(wsum == doctest::Approx(1.0).epsilon(1e-13));

    for (int a = 0; a <= order; ++a) {
      for (int b = 0; a + b <= order; ++b) {
        const double computed = integrate_triangle(
            Point2{0, 0}, Point2{1, 0}, Point2{0, 1}, order,
            [&](Point2 p) { return std::pow(p.x, a) * std::pow(p.y, b); });
        CHECK(computed == doctest::Approx(monomial_integral(a, b)).epsilon(1e-12));
      }
    }
  }
  CHECK_THROWS_AS(triangle_rule(0), std::invalid_argument);
  CHECK_THROWS_AS(triangle_rule(13), std::invalid_argument);
}

TEST_CASE("triangle quadrature respects affine maps") {
  // Integral of 1 over any triangle equals its area.
  const double area = integrate_triangle(Point2{1, 2}, Point2{4, 3}, Point2{2, 6}, 4,
                                         [](Point2) { return 1.0; });
  CHECK(area == doctest::Approx(0.5 * cross(Vec2{3, 1}, Vec2{1, 4})).epsilon(1e-14));
}
