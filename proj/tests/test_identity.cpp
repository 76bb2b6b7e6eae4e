#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "zaremba/identity.hpp"
#include "zaremba/shapes.hpp"

using namespace zaremba;

namespace {
constexpr double kPi = std::numbers::pi;

ManufacturedFunction paraboloid() {
  // u = 1 - x^2 - y^2
  return ManufacturedFunction::polynomial({{1.0, 0.0, -1.0}, {0.0}, {-1.0}});
}
}  // namespace

TEST_CASE("manufactured derivatives agree with finite differences") {
  const ManufacturedFunction funcs[] = {
      ManufacturedFunction::cosine_product(kPi / 2, kPi / 2),
      paraboloid(),
      ManufacturedFunction({{2.0, Factor1D::sin(1.3, 0.4), Factor1D::poly({0, 1, 2})},
                            {-0.5, Factor1D::poly({1, 0, 3}), Factor1D::cos(0.7)}}),
  };
  for (const auto& f : funcs) {
    CHECK(consistency_error(f, {-1, -1}, {1, 1}) < 1e-7);
  }
}

TEST_CASE("membership of cos*cos on the unit square") {
  const DomainBoundary square = shapes::make_unit_square();
  const ManufacturedFunction f = ManufacturedFunction::cosine_product(kPi / 2, kPi / 2);

  // Neumann on {x=0} (arc 3) and {y=0} (arc 0); Dirichlet on {x=1}, {y=1}.
  const std::vector<BCLabel> labels = {BCLabel::Neumann, BCLabel::Dirichlet,
                                       BCLabel::Dirichlet, BCLabel::Neumann};
  for (const ArcMembership& m : check_v2_membership(square, labels, f)) {
    CHECK(m.pass);
    CHECK(m.max_violation <= 1e-10);
  }

  // All-Dirichlet labeling fails on {x=0}.
  const std::vector<BCLabel> all_d(4, BCLabel::Dirichlet);
  const auto report = check_v2_membership(square, all_d, f);
  CHECK_FALSE(report[3].pass);  // arc 3 is x=0 where u = cos(pi y/2) != 0
  CHECK(report[3].max_violation > 0.1);
  CHECK(report[1].pass);
  CHECK(report[2].pass);
}

TEST_CASE("membership of the paraboloid on the disk") {
  const DomainBoundary disk = shapes::make_disk(1.0);
  const auto report =
      check_v2_membership(disk, {BCLabel::Dirichlet, BCLabel::Dirichlet}, paraboloid());
  for (const ArcMembership& m : report) CHECK(m.pass);
}

TEST_CASE("identity on the unit square with cos*cos") {
  const DomainBoundary square = shapes::make_unit_square();
  const ManufacturedFunction f = ManufacturedFunction::cosine_product(kPi / 2, kPi / 2);
  const IdentityBreakdown b = identity_residual(square, f, 8, {0.1, 0.1});
  const double expected = std::pow(kPi / 2, 4) / 4.0;  // both sides, closed form
  CHECK(b.term_mixed == doctest::Approx(expected).epsilon(1e-10));
  CHECK(b.term_cross == doctest::Approx(expected).epsilon(1e-10));
  CHECK(b.term_curv == 0.0);
  CHECK(std::abs(b.residual) < 1e-10);
}

TEST_CASE("identity on the disk with the paraboloid") {
  const DomainBoundary disk = shapes::make_disk(1.0);
  const IdentityBreakdown b = identity_residual(disk, paraboloid(), 8, {0.002, 0.01});
  CHECK(b.term_mixed == doctest::Approx(4 * kPi).epsilon(1e-6));
  CHECK(std::abs(b.term_cross) < 1e-12);
  CHECK(b.term_curv == doctest::Approx(-8 * kPi).epsilon(1e-6));
}

TEST_CASE("identity residual vanishes termwise for u = x(1-x) on the square") {
  const DomainBoundary square = shapes::make_unit_square();
  const ManufacturedFunction f = ManufacturedFunction::polynomial({{0.0}, {1.0}, {-1.0}});
  const IdentityBreakdown b = identity_residual(square, f, 4, {0.1, 0.1});
  CHECK(std::abs(b.term_mixed) < 1e-13);
  CHECK(std::abs(b.term_cross) < 1e-13);
  CHECK(std::abs(b.term_curv) < 1e-13);
  CHECK(std::abs(b.residual) < 1e-13);
}

TEST_CASE("polygon reduction: polynomial members integrate exactly, residual < 1e-9") {
  SUBCASE("all-Dirichlet bubble on the unit square") {
    const DomainBoundary square = shapes::make_unit_square();
    // u = x(1-x) y(1-y): vanishes on every side.
    const ManufacturedFunction f = ManufacturedFunction(
        {{1.0, Factor1D::poly({0, 1, -1}), Factor1D::poly({0, 1, -1})}});
    const auto membership =
        check_v2_membership(square, std::vector<BCLabel>(4, BCLabel::Dirichlet), f);
    for (const auto& m : membership) CHECK(m.pass);

    const IdentityBreakdown b = identity_residual(square, f, 8, {0.1, 0.1});
    CHECK(b.term_curv == 0.0);  // polygonal boundary
    CHECK(b.term_mixed == doctest::Approx(1.0 / 9.0).epsilon(1e-12));
    CHECK(b.term_cross == doctest::Approx(1.0 / 9.0).epsilon(1e-12));
    CHECK(std::abs(b.residual) < 1e-9);
  }
  SUBCASE("mixed-label member on a rectangle") {
    const DomainBoundary rect = shapes::make_rectangle(2.0, 1.0);
    // u = x(2-x): Dirichlet on the vertical sides, Neumann on the horizontal.
    const ManufacturedFunction f =
        ManufacturedFunction({{1.0, Factor1D::poly({0, 2, -1}), Factor1D::one()}});
    const std::vector<BCLabel> labels = {BCLabel::Neumann, BCLabel::Dirichlet,
                                         BCLabel::Neumann, BCLabel::Dirichlet};
    for (const auto& m : check_v2_membership(rect, labels, f)) CHECK(m.pass);

    const IdentityBreakdown b = identity_residual(rect, f, 6, {0.1, 0.1});
    CHECK(b.term_curv == 0.0);
    CHECK(std::abs(b.residual) < 1e-9);
  }
}

TEST_CASE("residual on curved domains decreases at the geometric rate") {
  const DomainBoundary disk = shapes::make_disk(1.0);
  const ManufacturedFunction f = paraboloid();
  double prev = 0.0;
  int level = 0;
  for (double h : {0.16, 0.08, 0.04}) {
    const IdentityBreakdown b = identity_residual(disk, f, 8, {h, 0.01});
    CHECK(b.residual != 0.0);
    if (level++ > 0) {
      const double ratio = std::abs(prev) / std::abs(b.residual);
      CHECK(ratio > 3.0);
      CHECK(ratio < 5.0);
    }
    prev = b.residual;
  }
}

TEST_CASE("curvature term is nonnegative after the sign flip on convex domains") {
  const ManufacturedFunction f = ManufacturedFunction({{1.0, Factor1D::sin(1.1, 0.3),
                                                        Factor1D::cos(0.9, -0.2)}});
  for (const DomainBoundary& dom :
       {shapes::make_disk(1.2), shapes::make_bulge_domain(1.0, 1.5)}) {
    const IdentityBreakdown b = identity_residual(dom, f, 6, {0.05, 0.05});
    CHECK(-0.5 * b.term_curv >= 0.0);
  }
}

TEST_CASE("quadrature order is validated") {
  const DomainBoundary square = shapes::make_unit_square();
  CHECK_THROWS_AS(identity_residual(square, paraboloid(), 1), std::invalid_argument);
  CHECK_THROWS_AS(identity_residual(square, paraboloid(), 13), std::invalid_argument);
}
