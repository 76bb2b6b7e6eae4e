#include "zaremba/shapes.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace zaremba::shapes {

namespace {
constexpr double kPi = std::numbers::pi;

DomainBoundary from_polygon(const std::vector<Point2>& corners) {
  std::vector<BoundaryArc> arcs;
  for (std::size_t i = 0; i < corners.size(); ++i) {
    arcs.emplace_back(Segment{corners[i], corners[(i + 1) % corners.size()]});
  }
  return DomainBoundary(std::move(arcs));
}
}  // namespace

DomainBoundary make_rectangle(double width, double height) {
  if (!(width > 0.0 && height > 0.0)) throw std::invalid_argument("rectangle needs positive sides");
  return from_polygon({{0, 0}, {width, 0}, {width, height}, {0, height}});
}

DomainBoundary make_unit_square() { return make_rectangle(1.0, 1.0); }

DomainBoundary make_triangle(Point2 a, Point2 b, Point2 c) {
  if (!(cross(b - a, c - a) > 0.0)) {
    throw std::invalid_argument("triangle vertices must be counterclockwise");
  }
  return from_polygon({a, b, c});
}

DomainBoundary make_disk(double radius) {
  std::vector<BoundaryArc> arcs;
  arcs.emplace_back(CircularArc{{0, 0}, radius, 0.0, kPi});
  arcs.emplace_back(CircularArc{{0, 0}, radius, kPi, 2.0 * kPi});
  return DomainBoundary(std::move(arcs));
}

DomainBoundary make_obtuse_triangle(double apex_angle, double split) {
  if (!(apex_angle >= kPi / 2 && apex_angle < kPi)) {
    throw std::invalid_argument("apex angle must lie in [pi/2, pi)");
  }
  if (!(split > 0.5 && split < 1.0)) {
    throw std::invalid_argument("split must lie in (0.5, 1) so the base angles differ");
  }
  const double rest = kPi - apex_angle;
  const double alpha0 = split * rest;        // at (0,0)
  const double alpha1 = (1.0 - split) * rest;  // at (1,0)
  const double t0 = std::tan(alpha0), t1 = std::tan(alpha1);
  const Point2 apex{t1 / (t0 + t1), t0 * t1 / (t0 + t1)};
  return make_triangle({0, 0}, {1, 0}, apex);
}

DomainBoundary make_acute_trapezium(double base_ratio, double height) {
  if (!(base_ratio > 0.0 && base_ratio < 1.0)) {
    throw std::invalid_argument("base ratio must lie in (0,1)");
  }
  if (!(height > 0.0)) throw std::invalid_argument("height must be positive");
  const double lo = 0.5 * (1.0 - base_ratio), hi = 0.5 * (1.0 + base_ratio);
  return from_polygon({{0, 0}, {1, 0}, {hi, height}, {lo, height}});
}

DomainBoundary make_bent_quadrilateral(double delta, double leg, double tail) {
  if (!(delta > 0.0 && delta < kPi / 4)) throw std::invalid_argument("delta must lie in (0, pi/4)");
  const Point2 p0{0, 1}, p1{0, 0};
  const Point2 p2 = p1 + Vec2{std::cos(-kPi / 4), std::sin(-kPi / 4)} * leg;
  const double beta = kPi / 4 - delta;
  const Point2 p3 = p2 + Vec2{std::cos(-beta), std::sin(-beta)} * tail;
  return from_polygon({p0, p1, p2, p3});
}

DomainBoundary make_bulge_domain(double height, double slope) {
  if (!(height > 0.0 && slope > 0.0)) throw std::invalid_argument("height and slope must be positive");
  std::vector<BoundaryArc> arcs;
  arcs.emplace_back(Segment{{0, height}, {0, 0}});
  // Local graph phi(t) = (slope/height) * (t^2 - height*t) over [0, height],
  // rotated by +pi/2 so the curve runs (x,y) = (-phi(t), t) from (0,0) up to
  // (0,height), bulging into x > 0.
  GraphArc bulge;
  bulge.coefficients = {0.0, -slope, slope / height};
  bulge.t_lo = 0.0;
  bulge.t_hi = height;
  bulge.rotation = kPi / 2;
  bulge.translation = {0, 0};
  arcs.emplace_back(bulge);
  return DomainBoundary(std::move(arcs));
}

}  // namespace zaremba::shapes
