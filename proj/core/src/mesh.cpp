#include "zaremba/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

#include "delaunay.hpp"

namespace zaremba {

namespace {

constexpr double kPi = std::numbers::pi;

struct TaggedSample {
  Point2 point;
  std::size_t arc_id;
  double s;
};

// Distances from a graded corner at which boundary (and fan layer) points
// sit. The first edge is e_min; afterwards positions grow geometrically with
// a ratio tied to the wedge angle so the layer thickness tracks the wedge
// chord, with edges never shrinking and never more than doubling.
std::vector<double> ramp_positions(double theta, double e_min, double h) {
  const double ratio = std::min(2.0, 1.0 + 1.2 * theta);
  std::vector<double> pos;
  double p = e_min, e = e_min;
  while (e < h && pos.size() < 256) {
    pos.push_back(p);
    e = std::max((ratio - 1.0) * p, e);
    p += e;
  }
  return pos;
}

// Arclength breakpoints of one arc; graded ends use the corner's ramp.
std::vector<double> arc_breakpoints(double len, double h, const std::vector<double>& front,
                                    const std::vector<double>& back, double e_min) {
  std::vector<double> pts;
  for (double p : front) {
    if (p < 0.45 * len) pts.push_back(p);
  }
  std::vector<double> rear;
  for (double p : back) {
    if (p < 0.45 * len) rear.push_back(len - p);
  }
  const double mid_lo = pts.empty() ? 0.0 : pts.back();
  const double mid_hi = rear.empty() ? len : rear.back();
  const int m = std::max(1, static_cast<int>(std::ceil((mid_hi - mid_lo) / h)));
  for (int k = 1; k < m; ++k) pts.push_back(mid_lo + (mid_hi - mid_lo) * k / m);
  if (!rear.empty()) pts.push_back(mid_hi);
  for (std::size_t i = rear.size(); i-- > 1;) pts.push_back(rear[i - 1]);
  // Drop near-duplicates (can appear when ramps meet the uniform region).
  std::vector<double> clean;
  double prev = 0.0;
  for (double p : pts) {
    if (p - prev > 0.25 * e_min && len - p > 0.25 * e_min) {
      clean.push_back(p);
      prev = p;
    }
  }
  return clean;
}

std::vector<TaggedSample> sample_boundary(const DomainBoundary& boundary, double h,
                                          const std::optional<GradingSpec>& grading) {
  std::vector<TaggedSample> samples;
  const std::size_t n = boundary.arc_count();
  std::vector<std::vector<double>> ramps(n);  // per corner; empty = not graded
  double e_min = h;
  if (grading) {
    if (!(grading->factor > 0.0 && grading->factor < 1.0) || grading->levels < 1) {
      throw std::invalid_argument("grading needs factor in (0,1) and levels >= 1");
    }
    e_min = h * std::pow(grading->factor, grading->levels);
    for (std::size_t c : grading->corners) {
      if (c >= n) throw std::invalid_argument("grading corner id out of range");
      ramps[c] = ramp_positions(boundary.interior_angles()[c], e_min, h);
    }
  }
  static const std::vector<double> kNoRamp;
  for (std::size_t i = 0; i < n; ++i) {
    const BoundaryArc& arc = boundary.arc(i);
    samples.push_back({arc.point_at(0.0), i, 0.0});
    const auto& front = grading ? ramps[i] : kNoRamp;
    const auto& back = grading ? ramps[(i + 1) % n] : kNoRamp;
    for (double s : arc_breakpoints(arc.length(), h, front, back, e_min)) {
      samples.push_back({arc.point_at(s), i, s});
    }
  }
  return samples;
}

double dist_point_segment(Point2 p, Point2 a, Point2 b) {
  const Vec2 ab = b - a;
  const double t = std::clamp(dot(p - a, ab) / dot(ab, ab), 0.0, 1.0);
  return distance(p, a + ab * t);
}

class PolygonClipper {
 public:
  explicit PolygonClipper(const std::vector<Point2>& ring) : ring_(ring) {}

  bool inside(Point2 p) const {
    for (std::size_t i = 0; i < ring_.size(); ++i) {
      const Point2& a = ring_[i];
      const Point2& b = ring_[(i + 1) % ring_.size()];
      if (cross(b - a, p - a) <= 0.0) return false;
    }
    return true;
  }

  double distance_to_boundary(Point2 p) const {
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < ring_.size(); ++i) {
      d = std::min(d, dist_point_segment(p, ring_[i], ring_[(i + 1) % ring_.size()]));
    }
    return d;
  }

 private:
  const std::vector<Point2>& ring_;
};

std::vector<Point2> lattice_points(const PolygonClipper& clip, Point2 lo, Point2 hi, double h,
                                   double clearance) {
  const Point2 center = (lo + hi) / 2.0;
  const double dy = h * std::sqrt(3.0) / 2.0;
  std::vector<Point2> pts;
  const int krange = static_cast<int>(std::ceil((hi.y - lo.y) / (2.0 * dy))) + 1;
  const int jrange = static_cast<int>(std::ceil((hi.x - lo.x) / (2.0 * h))) + 1;
  for (int k = -krange; k <= krange; ++k) {
    const double y = center.y + k * dy;
    const double offset = (k & 1) ? 0.5 * h : 0.0;
    for (int j = -jrange; j <= jrange; ++j) {
      const Point2 p{center.x + j * h + offset, y};
      if (clip.inside(p) && clip.distance_to_boundary(p) >= clearance * h) pts.push_back(p);
    }
  }
  return pts;
}

// Interior points filling the wedge at a graded corner with layers matching
// the boundary ramp radii.
std::vector<Point2> fan_points(const DomainBoundary& boundary, std::size_t corner,
                               double h, double e_min, const PolygonClipper& clip) {
  const Vec2 tau_out = boundary.arc(corner).frame_at(0.0).tau;
  const Point2 c = boundary.corners()[corner];
  const double theta = boundary.interior_angles()[corner];
  const std::vector<double> radii = ramp_positions(theta, e_min, h);

  std::vector<Point2> pts;
  for (std::size_t k = 0; k < radii.size(); ++k) {
    const double rho = radii[k];
    const double scale = (k + 1 < radii.size() ? radii[k + 1] : rho + h) - rho;
    const int m = static_cast<int>(std::llround(theta * rho / scale));
    for (int q = 1; q <= m; ++q) {
      const double alpha = theta * q / (m + 1);
      const Point2 p = c + rotate(tau_out, alpha) * rho;
      if (clip.inside(p) && clip.distance_to_boundary(p) >= 0.3 * scale) pts.push_back(p);
    }
  }
  return pts;
}

double triangle_area(Point2 a, Point2 b, Point2 c) { return 0.5 * cross(b - a, c - a); }

void triangle_angles(Point2 a, Point2 b, Point2 c, double out[3]) {
  const double la = distance(b, c), lb = distance(c, a), lc = distance(a, b);
  out[0] = std::acos(std::clamp((lb * lb + lc * lc - la * la) / (2 * lb * lc), -1.0, 1.0));
  out[1] = std::acos(std::clamp((lc * lc + la * la - lb * lb) / (2 * lc * la), -1.0, 1.0));
  out[2] = kPi - out[0] - out[1];
}

Mesh build_mesh(const DomainBoundary& boundary, double h,
                const std::optional<GradingSpec>& grading, double clearance) {
  const std::vector<TaggedSample> samples = sample_boundary(boundary, h, grading);
  const std::size_t nb = samples.size();

  std::vector<Point2> ring(nb);
  for (std::size_t i = 0; i < nb; ++i) ring[i] = samples[i].point;
  const PolygonClipper clip(ring);

  Point2 lo = ring[0], hi = ring[0];
  for (const Point2& p : ring) {
    lo.x = std::min(lo.x, p.x);
    lo.y = std::min(lo.y, p.y);
    hi.x = std::max(hi.x, p.x);
    hi.y = std::max(hi.y, p.y);
  }

  std::vector<Point2> pts = ring;
  std::vector<double> fan_radius(boundary.arc_count(), 0.0);
  if (grading) {
    const double e_min = h * std::pow(grading->factor, grading->levels);
    for (std::size_t c : grading->corners) {
      const auto ramp = ramp_positions(boundary.interior_angles()[c], e_min, h);
      fan_radius[c] = ramp.empty() ? 0.0 : ramp.back();
      for (const Point2& p : fan_points(boundary, c, h, e_min, clip)) pts.push_back(p);
    }
  }
  for (const Point2& p : lattice_points(clip, lo, hi, h, clearance)) {
    bool in_fan = false;
    if (grading) {
      for (std::size_t c : grading->corners) {
        in_fan |= distance(p, boundary.corners()[c]) < fan_radius[c] + 0.5 * h;
      }
    }
    if (!in_fan) pts.push_back(p);
  }

  Mesh mesh;
  mesh.vertices = pts;
  mesh.triangles = detail::delaunay_triangulation(pts);
  mesh.grading = grading;

  // The hull of a convex sample set is the boundary polygon; verify the ring
  // edges all appear so arc tags are sound.
  std::set<std::pair<int, int>> edges;
  for (const auto& t : mesh.triangles) {
    if (!(triangle_area(pts[t[0]], pts[t[1]], pts[t[2]]) > 0.0)) {
      throw std::runtime_error("triangulation produced a non-positive triangle");
    }
    for (int e = 0; e < 3; ++e) edges.insert({t[e], t[(e + 1) % 3]});
  }
  for (std::size_t i = 0; i < nb; ++i) {
    const int a = static_cast<int>(i), b = static_cast<int>((i + 1) % nb);
    if (!edges.count({a, b}) && !edges.count({b, a})) {
      throw std::runtime_error("boundary edge missing from triangulation");
    }
    mesh.boundary_edges.push_back({a, b, samples[i].arc_id});
  }

  for (std::size_t i = 0; i < nb; ++i) {
    mesh.boundary_params.push_back({static_cast<int>(i), samples[i].arc_id, samples[i].s});
    if (samples[i].s == 0.0) {
      // Corner vertex: also record its position on the closure of the
      // incoming arc.
      const std::size_t prev =
          (samples[i].arc_id + boundary.arc_count() - 1) % boundary.arc_count();
      mesh.boundary_params.push_back(
          {static_cast<int>(i), prev, boundary.arc(prev).length()});
    }
  }

  double hmax = 0.0;
  for (const auto& t : mesh.triangles) {
    for (int e = 0; e < 3; ++e) {
      hmax = std::max(hmax, distance(pts[t[e]], pts[t[(e + 1) % 3]]));
    }
  }
  mesh.h = hmax;
  return mesh;
}

}  // namespace

double quality_floor_deg(const DomainBoundary& boundary) {
  double min_corner = std::numeric_limits<double>::infinity();
  for (double a : boundary.interior_angles()) min_corner = std::min(min_corner, a);
  return std::min(20.0, 0.9 * min_corner * 180.0 / kPi);
}

Mesh generate(const DomainBoundary& boundary, double h,
              const std::optional<GradingSpec>& grading) {
  if (!(h > 0.0)) throw std::invalid_argument("mesh size h must be positive");
  if (h > boundary.diameter()) {
    throw std::invalid_argument("mesh size h exceeds the domain diameter");
  }
  const double floor_deg = quality_floor_deg(boundary);
  Mesh best;
  double best_angle = -1.0;
  for (double clearance : {0.5, 0.65, 0.8}) {
    Mesh mesh = build_mesh(boundary, h, grading, clearance);
    const QualityStats q = quality(mesh);
    if (q.min_angle_deg >= floor_deg) return mesh;
    if (q.min_angle_deg > best_angle) {
      best_angle = q.min_angle_deg;
      best = std::move(mesh);
    }
  }
  Point2 worst{0, 0};
  for (const auto& t : best.triangles) {
    const Point2 a = best.vertices[t[0]], b = best.vertices[t[1]], c = best.vertices[t[2]];
    double ang[3];
    triangle_angles(a, b, c, ang);
    const double m = std::min({ang[0], ang[1], ang[2]}) * 180.0 / kPi;
    if (std::abs(m - best_angle) < 1e-9) worst = (a + b + c) / 3.0;
  }
  throw std::runtime_error("mesh quality floor unmet: worst triangle angle " +
                           std::to_string(best_angle) + " deg < " + std::to_string(floor_deg) +
                           " deg near (" + std::to_string(worst.x) + ", " +
                           std::to_string(worst.y) + ")");
}

Mesh refine(const Mesh& mesh, const DomainBoundary& boundary) {
  Mesh out;
  out.vertices = mesh.vertices;
  out.grading = mesh.grading;
  out.boundary_params = mesh.boundary_params;

  std::map<std::pair<int, std::size_t>, double> param;  // (vertex, arc) -> s
  for (const auto& bp : mesh.boundary_params) param[{bp.vertex, bp.arc_id}] = bp.s;

  std::map<std::pair<int, int>, int> midpoint;
  auto edge_key = [](int a, int b) { return std::make_pair(std::min(a, b), std::max(a, b)); };

  // Boundary midpoints first: snapped onto the true arc at mid arclength.
  for (const BoundaryEdge& be : mesh.boundary_edges) {
    const double sa = param.at({be.a, be.arc_id});
    const double sb = param.at({be.b, be.arc_id});
    const double sm = 0.5 * (sa + sb);
    const int v = static_cast<int>(out.vertices.size());
    out.vertices.push_back(boundary.arc(be.arc_id).point_at(sm));
    midpoint[edge_key(be.a, be.b)] = v;
    out.boundary_params.push_back({v, be.arc_id, sm});
    out.boundary_edges.push_back({be.a, v, be.arc_id});
    out.boundary_edges.push_back({v, be.b, be.arc_id});
  }

  auto mid = [&](int a, int b) {
    const auto key = edge_key(a, b);
    const auto it = midpoint.find(key);
    if (it != midpoint.end()) return it->second;
    const int v = static_cast<int>(out.vertices.size());
    out.vertices.push_back((mesh.vertices[a] + mesh.vertices[b]) / 2.0);
    midpoint.emplace(key, v);
    return v;
  };

  for (const auto& t : mesh.triangles) {
    const int ab = mid(t[0], t[1]), bc = mid(t[1], t[2]), ca = mid(t[2], t[0]);
    out.triangles.push_back({t[0], ab, ca});
    out.triangles.push_back({ab, t[1], bc});
    out.triangles.push_back({ca, bc, t[2]});
    out.triangles.push_back({ab, bc, ca});
  }

  double hmax = 0.0;
  for (const auto& t : out.triangles) {
    if (!(triangle_area(out.vertices[t[0]], out.vertices[t[1]], out.vertices[t[2]]) > 0.0)) {
      throw std::runtime_error("refinement produced a non-positive triangle");
    }
    for (int e = 0; e < 3; ++e) {
      hmax = std::max(hmax, distance(out.vertices[t[e]], out.vertices[t[(e + 1) % 3]]));
    }
  }
  out.h = hmax;
  return out;
}

QualityStats quality(const Mesh& mesh) {
  QualityStats q;
  q.min_angle_deg = 180.0;
  q.h_min = std::numeric_limits<double>::infinity();
  for (const auto& t : mesh.triangles) {
    const Point2 a = mesh.vertices[t[0]], b = mesh.vertices[t[1]], c = mesh.vertices[t[2]];
    double ang[3];
    triangle_angles(a, b, c, ang);
    for (double x : ang) q.min_angle_deg = std::min(q.min_angle_deg, x * 180.0 / kPi);
    const double area = triangle_area(a, b, c);
    double longest = 0.0;
    const double edges[3] = {distance(a, b), distance(b, c), distance(c, a)};
    for (double e : edges) {
      longest = std::max(longest, e);
      q.h_min = std::min(q.h_min, e);
      q.h_max = std::max(q.h_max, e);
    }
    const double altitude = 2.0 * area / longest;
    q.max_aspect = std::max(q.max_aspect, longest / altitude);
  }
  return q;
}

double mesh_area(const Mesh& mesh) {
  double area = 0.0;
  for (const auto& t : mesh.triangles) {
    area += triangle_area(mesh.vertices[t[0]], mesh.vertices[t[1]], mesh.vertices[t[2]]);
  }
  return area;
}

std::string mesh_to_text(const Mesh& mesh) {
  std::ostringstream out;
  out.precision(17);
  out << "# zaremba mesh v1\n";
  out << "vertices " << mesh.vertices.size() << "\n";
  for (const Point2& v : mesh.vertices) out << v.x << " " << v.y << "\n";
  out << "triangles " << mesh.triangles.size() << "\n";
  for (const auto& t : mesh.triangles) out << t[0] << " " << t[1] << " " << t[2] << "\n";
  out << "boundary_edges " << mesh.boundary_edges.size() << "\n";
  for (const BoundaryEdge& e : mesh.boundary_edges) {
    out << e.a << " " << e.b << " " << e.arc_id << "\n";
  }
  out << "h " << mesh.h << "\n";
  return out.str();
}

}  // namespace zaremba
