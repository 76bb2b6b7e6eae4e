#include "zaremba/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace zaremba {

namespace {

constexpr double kPi = std::numbers::pi;

double poly_eval(const std::vector<double>& c, double t) {
  double v = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) v = v * t + c[i];
  return v;
}

std::vector<double> poly_derivative(const std::vector<double>& c) {
  std::vector<double> d;
  for (std::size_t i = 1; i < c.size(); ++i) d.push_back(static_cast<double>(i) * c[i]);
  return d;
}

// Positive half of the 16-point Gauss-Legendre rule on [-1, 1].
constexpr int kGL = 8;
constexpr double kGLNode[kGL] = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274, 0.6178762444026438,
    0.7554044083550030, 0.8656312023878318, 0.9445750230732326, 0.9894009349916499};
constexpr double kGLWeight[kGL] = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};

template <typename F>
double gauss16(F&& f, double a, double b) {
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double sum = 0.0;
  for (int i = 0; i < kGL; ++i) {
    sum += kGLWeight[i] * (f(mid + half * kGLNode[i]) + f(mid - half * kGLNode[i]));
  }
  return half * sum;
}

}  // namespace

BoundaryArc::BoundaryArc(Segment seg) : shape_(seg) {
  length_ = distance(seg.start, seg.end);
  if (!(length_ > 0.0) || !std::isfinite(length_)) {
    throw std::invalid_argument("segment arc must have positive finite length");
  }
}

BoundaryArc::BoundaryArc(CircularArc arc) : shape_(arc) {
  if (!(arc.radius > 0.0)) throw std::invalid_argument("circular arc needs radius > 0");
  length_ = arc.radius * std::abs(arc.angle_end - arc.angle_start);
  if (!(length_ > 0.0) || !std::isfinite(length_)) {
    throw std::invalid_argument("circular arc must have positive finite length");
  }
}

BoundaryArc::BoundaryArc(GraphArc arc) : shape_(std::move(arc)) {
  const GraphArc& g = std::get<GraphArc>(shape_);
  if (g.coefficients.empty()) throw std::invalid_argument("graph arc needs coefficients");
  if (!(g.t_hi > g.t_lo)) throw std::invalid_argument("graph arc needs t_hi > t_lo");
  dcoef_ = poly_derivative(g.coefficients);
  ddcoef_ = poly_derivative(dcoef_);

  // Cumulative arclength over uniform panels in t; s(t) is then inverted by
  // Newton within a panel. ds/dt = sqrt(1 + phi'(t)^2).
  const int panels = 64;
  panel_dt_ = (g.t_hi - g.t_lo) / panels;
  panel_s_.assign(panels + 1, 0.0);
  auto speed = [&](double t) { return std::hypot(1.0, poly_eval(dcoef_, t)); };
  for (int k = 0; k < panels; ++k) {
    const double a = g.t_lo + k * panel_dt_;
    panel_s_[k + 1] = panel_s_[k] + gauss16(speed, a, a + panel_dt_);
  }
  length_ = panel_s_.back();
  if (!(length_ > 0.0) || !std::isfinite(length_)) {
    throw std::invalid_argument("graph arc must have positive finite length");
  }
}

double BoundaryArc::check_param(double s) const {
  const double slack = 1e-9 * std::max(1.0, length_);
  if (s < -slack || s > length_ + slack) {
    throw std::out_of_range("arclength parameter outside [0, length]");
  }
  return std::clamp(s, 0.0, length_);
}

double BoundaryArc::graph_param_of_arclength(double s) const {
  const GraphArc& g = std::get<GraphArc>(shape_);
  // Traversal-aligned arclength: reversed arcs measure s from t_hi.
  const double s_fwd = g.reversed ? length_ - s : s;
  const auto it = std::upper_bound(panel_s_.begin(), panel_s_.end(), s_fwd);
  std::size_t k = std::min<std::size_t>(panel_s_.size() - 2, it == panel_s_.begin() ? 0 : (it - panel_s_.begin()) - 1);
  double t = g.t_lo + (static_cast<double>(k) + 0.5) * panel_dt_;
  auto speed = [&](double u) { return std::hypot(1.0, poly_eval(dcoef_, u)); };
  const double panel_start = g.t_lo + static_cast<double>(k) * panel_dt_;
  // Newton on s(t) - s_fwd (monotone, speed >= 1) with bisection bounds.
  double lo = panel_start, hi = panel_start + panel_dt_;
  for (int iter = 0; iter < 60; ++iter) {
    const double st = panel_s_[k] + gauss16(speed, panel_start, t);
    const double err = st - s_fwd;
    if (std::abs(err) < 1e-15 * std::max(1.0, length_)) break;
    if (err > 0.0) hi = t;
    else lo = t;
    double next = t - err / speed(t);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    t = next;
  }
  return t;
}

Point2 BoundaryArc::point_at(double s) const {
  s = check_param(s);
  if (const auto* seg = std::get_if<Segment>(&shape_)) {
    const Vec2 dir = (seg->end - seg->start) / length_;
    return seg->start + dir * s;
  }
  if (const auto* c = std::get_if<CircularArc>(&shape_)) {
    const double sgn = c->angle_end >= c->angle_start ? 1.0 : -1.0;
    const double theta = c->angle_start + sgn * s / c->radius;
    return c->center + Vec2{std::cos(theta), std::sin(theta)} * c->radius;
  }
  const GraphArc& g = std::get<GraphArc>(shape_);
  const double t = graph_param_of_arclength(s);
  const Point2 local{t, poly_eval(g.coefficients, t)};
  return rotate(local, g.rotation) + g.translation;
}

UnitFrame BoundaryArc::frame_at(double s) const {
  s = check_param(s);
  Vec2 tau;
  if (const auto* seg = std::get_if<Segment>(&shape_)) {
    tau = (seg->end - seg->start) / length_;
  } else if (const auto* c = std::get_if<CircularArc>(&shape_)) {
    const double sgn = c->angle_end >= c->angle_start ? 1.0 : -1.0;
    const double theta = c->angle_start + sgn * s / c->radius;
    tau = Vec2{-std::sin(theta), std::cos(theta)} * sgn;
  } else {
    const GraphArc& g = std::get<GraphArc>(shape_);
    const double t = graph_param_of_arclength(s);
    const double w = std::hypot(1.0, poly_eval(dcoef_, t));
    Vec2 local{1.0 / w, poly_eval(dcoef_, t) / w};
    if (g.reversed) local = -local;
    tau = rotate(local, g.rotation);
  }
  return {tau, outward_of(tau)};
}

double BoundaryArc::curvature_at(double s) const {
  s = check_param(s);
  if (std::holds_alternative<Segment>(shape_)) return 0.0;
  if (const auto* c = std::get_if<CircularArc>(&shape_)) {
    const double sgn = c->angle_end >= c->angle_start ? 1.0 : -1.0;
    return -sgn / c->radius;
  }
  const GraphArc& g = std::get<GraphArc>(shape_);
  const double t = graph_param_of_arclength(s);
  const double dp = poly_eval(dcoef_, t);
  const double ddp = poly_eval(ddcoef_, t);
  const double w2 = 1.0 + dp * dp;
  const double kappa = -ddp / (w2 * std::sqrt(w2));
  return g.reversed ? -kappa : kappa;
}

DomainBoundary::DomainBoundary(std::vector<BoundaryArc> arcs) : arcs_(std::move(arcs)) {
  if (arcs_.size() < 2) throw std::invalid_argument("boundary needs at least two arcs");
  const std::size_t n = arcs_.size();
  corners_.resize(n);
  interior_angles_.resize(n);
  closure_gaps_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const BoundaryArc& prev = arcs_[(i + n - 1) % n];
    const BoundaryArc& next = arcs_[i];
    corners_[i] = next.start();
    closure_gaps_[i] = distance(prev.end(), next.start());
    const Vec2 tau_in = prev.frame_at(prev.length()).tau;
    const Vec2 tau_out = next.frame_at(0.0).tau;
    const double exterior = std::atan2(cross(tau_in, tau_out), dot(tau_in, tau_out));
    interior_angles_[i] = kPi - exterior;
    perimeter_ += next.length();
  }
}

double DomainBoundary::diameter() const {
  const auto samples = boundary_samples(*this, std::max(perimeter_ / 64.0, 1e-12));
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i)
    for (std::size_t j = i + 1; j < samples.size(); ++j)
      d = std::max(d, distance(samples[i].point, samples[j].point));
  return d;
}

double interior_angle(const DomainBoundary& boundary, std::size_t corner_index) {
  if (corner_index >= boundary.arc_count()) throw std::out_of_range("corner index out of range");
  return boundary.interior_angles()[corner_index];
}

ValidationReport validate(const DomainBoundary& boundary, const ValidationOptions& opts) {
  ValidationReport report;
  report.corner_count = boundary.arc_count();
  report.max_curvature = -std::numeric_limits<double>::infinity();

  for (std::size_t i = 0; i < boundary.arc_count(); ++i) {
    const double gap = boundary.closure_gaps()[i];
    report.max_closure_gap = std::max(report.max_closure_gap, gap);
    if (gap > opts.tol_closure) {
      report.issues.push_back({ValidationIssueKind::ClosureGap, i, gap,
                               "chain not closed at corner " + std::to_string(i)});
    }
  }

  std::vector<Point2> polygon;
  for (const auto& s : boundary_samples(boundary, std::max(boundary.perimeter() / 256.0, 1e-12))) {
    polygon.push_back(s.point);
  }
  report.signed_area = signed_polygon_area(polygon);
  if (!(report.signed_area > 0.0)) {
    report.issues.push_back({ValidationIssueKind::Orientation, 0, report.signed_area,
                             "boundary is not positively oriented (signed area <= 0)"});
  }

  for (std::size_t i = 0; i < boundary.arc_count(); ++i) {
    const BoundaryArc& arc = boundary.arc(i);
    double worst = -std::numeric_limits<double>::infinity();
    double worst_s = 0.0;
    for (int k = 0; k < opts.samples_per_arc; ++k) {
      const double s = arc.length() * (k + 0.5) / opts.samples_per_arc;
      const double kappa = arc.curvature_at(s);
      if (kappa > worst) {
        worst = kappa;
        worst_s = s;
      }
    }
    report.max_curvature = std::max(report.max_curvature, worst);
    if (worst > opts.tol_curvature) {
      report.issues.push_back({ValidationIssueKind::PositiveCurvature, i, worst,
                               "arc " + std::to_string(i) + " has positive curvature at s=" +
                                   std::to_string(worst_s)});
    }
  }

  for (std::size_t i = 0; i < boundary.arc_count(); ++i) {
    const double angle = boundary.interior_angles()[i];
    if (angle > kPi + 1e-12) {
      report.issues.push_back({ValidationIssueKind::ReflexCorner, i, angle,
                               "reflex corner " + std::to_string(i)});
    }
    if (angle < 1e-9) {
      report.issues.push_back({ValidationIssueKind::Cusp, i, angle,
                               "cusp at corner " + std::to_string(i)});
    }
  }

  report.accepted = report.issues.empty();
  return report;
}

std::vector<BoundarySample> boundary_samples(const DomainBoundary& boundary, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("sample spacing h must be positive");
  std::vector<BoundarySample> samples;
  for (std::size_t i = 0; i < boundary.arc_count(); ++i) {
    const BoundaryArc& arc = boundary.arc(i);
    const int n = std::max(1, static_cast<int>(std::ceil(arc.length() / h)));
    for (int k = 0; k < n; ++k) {
      const double s = arc.length() * k / n;
      samples.push_back({arc.point_at(s), i, s});
    }
  }
  return samples;
}

double signed_polygon_area(const std::vector<Point2>& polygon) {
  double twice = 0.0;
  const std::size_t n = polygon.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& a = polygon[i];
    const Point2& b = polygon[(i + 1) % n];
    twice += cross(a, b);
  }
  return 0.5 * twice;
}

double total_turning(const DomainBoundary& boundary) {
  double turning = 0.0;
  for (const BoundaryArc& arc : boundary.arcs()) {
    // kappa is piecewise smooth on each arc; composite Gauss over short panels.
    const int panels = std::max(8, static_cast<int>(std::ceil(arc.length() / 0.05)));
    const double ds = arc.length() / panels;
    for (int k = 0; k < panels; ++k) {
      const double a = k * ds;
      turning += gauss16([&](double s) { return arc.curvature_at(s); }, a, a + ds);
    }
  }
  for (double angle : boundary.interior_angles()) turning -= (kPi - angle);
  return turning;
}

}  // namespace zaremba
