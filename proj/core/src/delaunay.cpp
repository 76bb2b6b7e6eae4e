#include "delaunay.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

namespace zaremba::detail {

namespace {

struct Tri {
  std::array<int, 3> v;   // counterclockwise
  std::array<int, 3> nb;  // nb[i] faces edge (v[i], v[(i+1)%3]); -1 = none
  bool alive = true;
};

long double orient_ld(Point2 a, Point2 b, Point2 c) {
  const long double abx = static_cast<long double>(b.x) - a.x;
  const long double aby = static_cast<long double>(b.y) - a.y;
  const long double acx = static_cast<long double>(c.x) - a.x;
  const long double acy = static_cast<long double>(c.y) - a.y;
  return abx * acy - aby * acx;
}

// > 0 iff d lies strictly inside the circumcircle of ccw triangle (a, b, c).
long double incircle_ld(Point2 a, Point2 b, Point2 c, Point2 d) {
  const long double adx = static_cast<long double>(a.x) - d.x;
  const long double ady = static_cast<long double>(a.y) - d.y;
  const long double bdx = static_cast<long double>(b.x) - d.x;
  const long double bdy = static_cast<long double>(b.y) - d.y;
  const long double cdx = static_cast<long double>(c.x) - d.x;
  const long double cdy = static_cast<long double>(c.y) - d.y;
  const long double ad2 = adx * adx + ady * ady;
  const long double bd2 = bdx * bdx + bdy * bdy;
  const long double cd2 = cdx * cdx + cdy * cdy;
  return adx * (bdy * cd2 - bd2 * cdy) - ady * (bdx * cd2 - bd2 * cdx) +
         ad2 * (bdx * cdy - bdy * cdx);
}

class Triangulator {
 public:
  explicit Triangulator(const std::vector<Point2>& points) : pts_(points) {
    const int n = static_cast<int>(points.size());
    if (n < 3) throw std::invalid_argument("triangulation needs at least 3 points");

    Point2 lo = points[0], hi = points[0];
    for (const Point2& p : points) {
      lo.x = std::min(lo.x, p.x);
      lo.y = std::min(lo.y, p.y);
      hi.x = std::max(hi.x, p.x);
      hi.y = std::max(hi.y, p.y);
    }
    const Point2 center = (lo + hi) / 2.0;
    const double radius = 64.0 * std::max({hi.x - lo.x, hi.y - lo.y, 1e-9});
    // Slightly rotated so super vertices avoid collinearity with axis-aligned
    // input features.
    for (int k = 0; k < 3; ++k) {
      const double angle = 0.5235 + 2.0 * M_PI * k / 3.0;
      pts_.push_back(center + Vec2{std::cos(angle), std::sin(angle)} * radius);
    }
    tris_.push_back({{n, n + 1, n + 2}, {-1, -1, -1}, true});
    last_ = 0;

    for (int i = 0; i < n; ++i) insert(i);
  }

  std::vector<std::array<int, 3>> extract() const {
    const int n = static_cast<int>(pts_.size()) - 3;
    std::vector<std::array<int, 3>> out;
    for (const Tri& t : tris_) {
      if (!t.alive) continue;
      if (t.v[0] >= n || t.v[1] >= n || t.v[2] >= n) continue;
      out.push_back(t.v);
    }
    return out;
  }

 private:
  int locate(Point2 p) const {
    int cur = last_;
    const int cap = static_cast<int>(tris_.size()) * 4 + 64;
    for (int step = 0; step < cap; ++step) {
      const Tri& t = tris_[cur];
      int next = -1;
      for (int e = 0; e < 3; ++e) {
        if (orient_ld(pts_[t.v[e]], pts_[t.v[(e + 1) % 3]], p) < 0.0L) {
          next = t.nb[e];
          break;
        }
      }
      if (next == -1) return cur;
      cur = next;
    }
    // Walk failed to settle (should not happen); fall back to a full scan.
    for (int i = 0; i < static_cast<int>(tris_.size()); ++i) {
      const Tri& t = tris_[i];
      if (!t.alive) continue;
      bool inside = true;
      for (int e = 0; e < 3 && inside; ++e) {
        inside = orient_ld(pts_[t.v[e]], pts_[t.v[(e + 1) % 3]], p) >= 0.0L;
      }
      if (inside) return i;
    }
    throw std::runtime_error("point location failed during triangulation");
  }

  void insert(int pi) {
    const Point2 p = pts_[pi];
    const int seed = locate(p);

    // Grow the cavity of triangles whose circumcircle strictly contains p.
    // The containing triangle is always part of the cavity.
    std::vector<int> cavity;
    std::vector<int> stack{seed};
    in_cavity_.assign(tris_.size(), 0);
    in_cavity_[seed] = 1;
    while (!stack.empty()) {
      const int ti = stack.back();
      stack.pop_back();
      cavity.push_back(ti);
      for (int e = 0; e < 3; ++e) {
        const int nb = tris_[ti].nb[e];
        if (nb < 0 || in_cavity_[nb] || !tris_[nb].alive) continue;
        const Tri& t = tris_[nb];
        if (incircle_ld(pts_[t.v[0]], pts_[t.v[1]], pts_[t.v[2]], p) > 0.0L) {
          in_cavity_[nb] = 1;
          stack.push_back(nb);
        }
      }
    }

    // Collect the cavity boundary as directed edges (a, b) with their outer
    // neighbors, then fan p to each edge.
    struct Rim {
      int a, b, outer;
    };
    std::vector<Rim> rim;
    for (int ti : cavity) {
      for (int e = 0; e < 3; ++e) {
        const int nb = tris_[ti].nb[e];
        if (nb >= 0 && in_cavity_[nb]) continue;
        rim.push_back({tris_[ti].v[e], tris_[ti].v[(e + 1) % 3], nb});
      }
      tris_[ti].alive = false;
    }

    std::map<std::pair<int, int>, int> open_edge;  // directed (p->a / b->p) stitching
    for (const Rim& r : rim) {
      if (!(orient_ld(pts_[r.a], pts_[r.b], p) > 0.0L)) {
        throw std::runtime_error("degenerate cavity during triangulation");
      }
      const int ni = static_cast<int>(tris_.size());
      tris_.push_back({{r.a, r.b, pi}, {r.outer, -1, -1}, true});
      if (r.outer >= 0) {
        Tri& o = tris_[r.outer];
        for (int e = 0; e < 3; ++e) {
          if (o.v[e] == r.b && o.v[(e + 1) % 3] == r.a) o.nb[e] = ni;
        }
      }
      // Edge 1 of the new triangle is (b, p); edge 2 is (p, a).
      auto stitch = [&](std::pair<int, int> key, std::pair<int, int> rev, int edge) {
        const auto it = open_edge.find(rev);
        if (it == open_edge.end()) {
          open_edge.emplace(key, ni);
          return;
        }
        const int other = it->second;
        tris_[ni].nb[edge] = other;
        Tri& o = tris_[other];
        for (int e = 0; e < 3; ++e) {
          if (o.v[e] == rev.first && o.v[(e + 1) % 3] == rev.second) o.nb[e] = ni;
        }
      };
      stitch({r.b, pi}, {pi, r.b}, 1);
      stitch({pi, r.a}, {r.a, pi}, 2);
      last_ = ni;
    }
  }

  std::vector<Point2> pts_;
  std::vector<Tri> tris_;
  std::vector<char> in_cavity_;
  int last_ = 0;
};

}  // namespace

std::vector<std::array<int, 3>> delaunay_triangulation(const std::vector<Point2>& points) {
  Triangulator tri(points);
  return tri.extract();
}

}  // namespace zaremba::detail
