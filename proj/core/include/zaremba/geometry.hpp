#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <variant>
#include <vector>

namespace zaremba {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double c) const { return {c * x, c * y}; }
  Vec2 operator/(double c) const { return {x / c, y / c}; }
  Vec2 operator-() const { return {-x, -y}; }
};

using Point2 = Vec2;

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }
inline Vec2 normalized(Vec2 a) { return a / norm(a); }
inline Vec2 rotate(Vec2 v, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}

/// Rotation by -pi/2: maps the positively-oriented tangent to the outward normal.
inline Vec2 outward_of(Vec2 tau) { return {tau.y, -tau.x}; }

/// Tangent/outward-normal pair at a boundary point. nu == rotate(tau, -pi/2),
/// which points outward when the boundary is traversed counterclockwise.
struct UnitFrame {
  Vec2 tau;
  Vec2 nu;
};

/// Straight arc from start to end, traversed start -> end.
struct Segment {
  Point2 start;
  Point2 end;
};

/// Circle arc around center, traversed from angle_start to angle_end
/// (increasing angle = counterclockwise around the center).
struct CircularArc {
  Point2 center;
  double radius = 1.0;
  double angle_start = 0.0;
  double angle_end = 0.0;
};

/// Graph of a polynomial t -> phi(t) over [t_lo, t_hi] in a local frame,
/// mapped into the plane by an orientation-preserving rigid motion
/// p = R(rotation) * (t, phi(t)) + translation. `reversed` traverses from
/// t_hi down to t_lo.
struct GraphArc {
  std::vector<double> coefficients;  // phi(t) = c0 + c1 t + c2 t^2 + ...
  double t_lo = 0.0;
  double t_hi = 1.0;
  double rotation = 0.0;
  Vec2 translation{};
  bool reversed = false;
};

/// One smooth piece of a boundary with exact arclength parameterization.
/// All accessors take arclength s in [0, length()] measured along the
/// stored traversal direction (the boundary's positive orientation).
class BoundaryArc {
 public:
  explicit BoundaryArc(Segment seg);
  explicit BoundaryArc(CircularArc arc);
  explicit BoundaryArc(GraphArc arc);

  double length() const { return length_; }
  Point2 point_at(double s) const;
  UnitFrame frame_at(double s) const;
  double curvature_at(double s) const;

  Point2 start() const { return point_at(0.0); }
  Point2 end() const { return point_at(length_); }

  bool is_segment() const { return std::holds_alternative<Segment>(shape_); }
  const std::variant<Segment, CircularArc, GraphArc>& shape() const { return shape_; }

 private:
  double check_param(double s) const;
  double graph_param_of_arclength(double s) const;

  std::variant<Segment, CircularArc, GraphArc> shape_;
  double length_ = 0.0;

  // GraphArc support: derivative coefficients and a cumulative arclength
  // table over uniform panels in t, used to invert s(t).
  std::vector<double> dcoef_, ddcoef_;
  std::vector<double> panel_s_;  // panel_s_[k] = arclength at t_lo + k*panel_dt_
  double panel_dt_ = 0.0;
};

/// Closed, positively oriented chain of smooth arcs. Corner i is the shared
/// endpoint of arcs i-1 and i (i.e. the start point of arc i).
class DomainBoundary {
 public:
  explicit DomainBoundary(std::vector<BoundaryArc> arcs);

  const std::vector<BoundaryArc>& arcs() const { return arcs_; }
  std::size_t arc_count() const { return arcs_.size(); }
  const BoundaryArc& arc(std::size_t i) const { return arcs_.at(i); }

  const std::vector<Point2>& corners() const { return corners_; }
  const std::vector<double>& interior_angles() const { return interior_angles_; }
  const std::vector<double>& closure_gaps() const { return closure_gaps_; }

  double perimeter() const { return perimeter_; }
  /// Largest pairwise distance between sampled boundary points.
  double diameter() const;

 private:
  std::vector<BoundaryArc> arcs_;
  std::vector<Point2> corners_;
  std::vector<double> interior_angles_;
  std::vector<double> closure_gaps_;  // |end(arc i-1) - start(arc i)|
  double perimeter_ = 0.0;
};

double interior_angle(const DomainBoundary& boundary, std::size_t corner_index);

enum class ValidationIssueKind {
  ClosureGap,
  Orientation,
  PositiveCurvature,
  ReflexCorner,
  Cusp,
};

struct ValidationIssue {
  ValidationIssueKind kind;
  std::size_t index = 0;    // arc or corner id
  double magnitude = 0.0;
  std::string message;
};

struct ValidationReport {
  bool accepted = false;
  std::vector<ValidationIssue> issues;
  std::size_t corner_count = 0;
  double signed_area = 0.0;     // of the sampled polygon
  double max_closure_gap = 0.0;
  double max_curvature = 0.0;   // largest sampled kappa (<= 0 on convex input)
};

struct ValidationOptions {
  double tol_closure = 1e-12;
  double tol_curvature = 1e-10;  // reject arcs with sampled kappa above this
  int samples_per_arc = 256;
};

/// Checks closure, counterclockwise orientation, convexity (sampled kappa <= tol
/// and corner angles <= pi) and absence of cusps. Report-based: never throws.
ValidationReport validate(const DomainBoundary& boundary, const ValidationOptions& opts = {});

struct BoundarySample {
  Point2 point;
  std::size_t arc_id;
  double s;  // arclength position on the source arc
};

/// Samples the boundary in positive orientation with consecutive spacing <= h.
/// Every corner appears exactly once (as the s=0 sample of its outgoing arc);
/// the first sample is the start point of arc 0.
std::vector<BoundarySample> boundary_samples(const DomainBoundary& boundary, double h);

double signed_polygon_area(const std::vector<Point2>& polygon);

/// Integral of kappa over all arcs minus the sum of exterior corner angles;
/// equals -2*pi for a valid convex boundary.
double total_turning(const DomainBoundary& boundary);

}  // namespace zaremba
