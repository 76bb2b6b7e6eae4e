#include "zaremba/identity.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "zaremba/quadrature.hpp"

namespace zaremba {

double Factor1D::eval(double t, int deriv) const {
  switch (kind) {
    case Kind::Poly: {
      std::vector<double> c = coeffs;
      for (int d = 0; d < deriv; ++d) {
        std::vector<double> dc;
        for (std::size_t i = 1; i < c.size(); ++i) dc.push_back(static_cast<double>(i) * c[i]);
        c = std::move(dc);
      }
      double v = 0.0;
      for (std::size_t i = c.size(); i-- > 0;) v = v * t + c[i];
      return v;
    }
    case Kind::Sin: {
      const double arg = freq * t + phase;
      const double scale = std::pow(freq, deriv);
      switch (deriv % 4) {
        case 0: return scale * std::sin(arg);
        case 1: return scale * std::cos(arg);
        case 2: return -scale * std::sin(arg);
        default: return -scale * std::cos(arg);
      }
    }
    case Kind::Cos: {
      const double arg = freq * t + phase;
      const double scale = std::pow(freq, deriv);
      switch (deriv % 4) {
        case 0: return scale * std::cos(arg);
        case 1: return -scale * std::sin(arg);
        case 2: return -scale * std::cos(arg);
        default: return scale * std::sin(arg);
      }
    }
  }
  return 0.0;
}

ManufacturedFunction::ManufacturedFunction(std::vector<SeparableTerm> terms)
    : terms_(std::move(terms)) {
  if (terms_.empty()) throw std::invalid_argument("manufactured function needs terms");
}

ManufacturedFunction ManufacturedFunction::cosine_product(double kx, double ky) {
  return ManufacturedFunction({{1.0, Factor1D::cos(kx), Factor1D::cos(ky)}});
}

ManufacturedFunction ManufacturedFunction::polynomial(
    const std::vector<std::vector<double>>& coeffs) {
  std::vector<SeparableTerm> terms;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    for (std::size_t j = 0; j < coeffs[i].size(); ++j) {
      if (coeffs[i][j] == 0.0) continue;
      std::vector<double> px(i + 1, 0.0), py(j + 1, 0.0);
      px[i] = 1.0;
      py[j] = 1.0;
      terms.push_back({coeffs[i][j], Factor1D::poly(px), Factor1D::poly(py)});
    }
  }
  if (terms.empty()) terms.push_back({0.0, Factor1D::one(), Factor1D::one()});
  return ManufacturedFunction(std::move(terms));
}

double ManufacturedFunction::eval(Point2 p, int dx, int dy) const {
  double sum = 0.0;
  for (const SeparableTerm& t : terms_) {
    sum += t.coef * t.fx.eval(p.x, dx) * t.fy.eval(p.y, dy);
  }
  return sum;
}

double consistency_error(const ManufacturedFunction& f, Point2 lo, Point2 hi, int n_points,
                         unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> ux(lo.x, hi.x), uy(lo.y, hi.y);
  // Balances truncation against roundoff in the second differences.
  const double h = 1e-4;
  double worst = 0.0;
  for (int k = 0; k < n_points; ++k) {
    const Point2 p{ux(rng), uy(rng)};
    auto at = [&](double dx, double dy) { return f.u({p.x + dx, p.y + dy}); };
    const double fd_x = (at(h, 0) - at(-h, 0)) / (2 * h);
    const double fd_y = (at(0, h) - at(0, -h)) / (2 * h);
    const double fd_xx = (at(h, 0) - 2 * at(0, 0) + at(-h, 0)) / (h * h);
    const double fd_yy = (at(0, h) - 2 * at(0, 0) + at(0, -h)) / (h * h);
    const double fd_xy = (at(h, h) - at(h, -h) - at(-h, h) + at(-h, -h)) / (4 * h * h);
    auto rel = [](double fd, double exact) {
      return std::abs(fd - exact) / (1.0 + std::abs(exact));
    };
    worst = std::max({worst, rel(fd_x, f.grad(p).x), rel(fd_y, f.grad(p).y),
                      rel(fd_xx, f.uxx(p)), rel(fd_yy, f.uyy(p)), rel(fd_xy, f.uxy(p))});
  }
  return worst;
}

std::vector<ArcMembership> check_v2_membership(const DomainBoundary& boundary,
                                               const std::vector<BCLabel>& labels,
                                               const ManufacturedFunction& f,
                                               int samples_per_arc, double tol) {
  if (labels.size() != boundary.arc_count()) {
    throw std::invalid_argument("one boundary-condition label per arc required");
  }
  std::vector<ArcMembership> report;
  for (std::size_t i = 0; i < boundary.arc_count(); ++i) {
    const BoundaryArc& arc = boundary.arc(i);
    ArcMembership m;
    m.arc_id = i;
    m.label = labels[i];
    for (int k = 0; k < samples_per_arc; ++k) {
      const double s = arc.length() * (k + 0.5) / samples_per_arc;
      const Point2 p = arc.point_at(s);
      const double violation = labels[i] == BCLabel::Dirichlet
                                   ? std::abs(f.u(p))
                                   : std::abs(dot(arc.frame_at(s).nu, f.grad(p)));
      m.max_violation = std::max(m.max_violation, violation);
    }
    m.pass = m.max_violation <= tol;
    report.push_back(m);
  }
  return report;
}

IdentityBreakdown identity_residual(const DomainBoundary& boundary,
                                    const ManufacturedFunction& f, int quad_order,
                                    const IdentityQuadOptions& opts) {
  if (quad_order < 2 || quad_order > 12) {
    throw std::invalid_argument("quad_order must lie in 2..12");
  }

  // Domain integrals over a centroid fan of the sampled boundary polygon
  // (valid for convex domains; quadrature accuracy does not need mesh-grade
  // triangle shapes).
  const auto samples = boundary_samples(boundary, opts.domain_h);
  Point2 centroid{0, 0};
  for (const auto& s : samples) centroid = centroid + s.point;
  centroid = centroid / static_cast<double>(samples.size());

  IdentityBreakdown out;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const Point2 a = samples[i].point;
    const Point2 b = samples[(i + 1) % samples.size()].point;
    out.term_mixed += integrate_triangle(centroid, a, b, quad_order,
                                         [&](Point2 p) { return f.uxx(p) * f.uyy(p); });
    out.term_cross += integrate_triangle(centroid, a, b, quad_order, [&](Point2 p) {
      const double m = f.uxy(p);
      return m * m;
    });
  }

  // Boundary integral with the exact arc parameterization and analytic
  // curvature, independent of the domain triangulation.
  const int gl_points = std::max(4, (quad_order + 2) / 2);
  const auto gl = gauss_legendre(gl_points);
  for (const BoundaryArc& arc : boundary.arcs()) {
    const int panels =
        std::max(1, static_cast<int>(std::ceil(arc.length() / opts.boundary_h)));
    const double ds = arc.length() / panels;
    for (int k = 0; k < panels; ++k) {
      for (const QuadNode1D& node : gl) {
        const double s = (k + 0.5 * (node.x + 1.0)) * ds;
        const Vec2 g = f.grad(arc.point_at(s));
        out.term_curv += 0.5 * ds * node.w * arc.curvature_at(s) * dot(g, g);
      }
    }
  }

  out.residual = out.term_mixed - out.term_cross + 0.5 * out.term_curv;
  return out;
}

}  // namespace zaremba
