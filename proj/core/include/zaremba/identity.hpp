#pragma once

#include <cstddef>
#include <vector>

#include "zaremba/geometry.hpp"

namespace zaremba {

/// One-dimensional building block: polynomial, sin(freq t + phase) or
/// cos(freq t + phase), with analytic derivatives up to second order.
struct Factor1D {
  enum class Kind { Poly, Sin, Cos };
  Kind kind = Kind::Poly;
  std::vector<double> coeffs;  // Poly: c0 + c1 t + ...
  double freq = 1.0;
  double phase = 0.0;

  static Factor1D poly(std::vector<double> c) { return {Kind::Poly, std::move(c), 0.0, 0.0}; }
  static Factor1D sin(double freq, double phase = 0.0) { return {Kind::Sin, {}, freq, phase}; }
  static Factor1D cos(double freq, double phase = 0.0) { return {Kind::Cos, {}, freq, phase}; }
  static Factor1D one() { return poly({1.0}); }

  double eval(double t, int deriv) const;
};

struct SeparableTerm {
  double coef = 1.0;
  Factor1D fx;
  Factor1D fy;
};

/// Closed-form function u(x,y) = sum_t c_t X_t(x) Y_t(y) with hand-coded
/// first and second derivatives.
class ManufacturedFunction {
 public:
  explicit ManufacturedFunction(std::vector<SeparableTerm> terms);

  static ManufacturedFunction cosine_product(double kx, double ky);
  /// coeffs[i][j] multiplies x^i y^j.
  static ManufacturedFunction polynomial(const std::vector<std::vector<double>>& coeffs);

  double u(Point2 p) const { return eval(p, 0, 0); }
  Vec2 grad(Point2 p) const { return {eval(p, 1, 0), eval(p, 0, 1)}; }
  double uxx(Point2 p) const { return eval(p, 2, 0); }
  double uyy(Point2 p) const { return eval(p, 0, 2); }
  double uxy(Point2 p) const { return eval(p, 1, 1); }

  const std::vector<SeparableTerm>& terms() const { return terms_; }

 private:
  double eval(Point2 p, int dx, int dy) const;
  std::vector<SeparableTerm> terms_;
};

/// Largest relative mismatch (scaled by 1 + |value|) between the analytic
/// derivative evaluators and central finite differences of u at n
/// pseudo-random points in [lo, hi]^2.
double consistency_error(const ManufacturedFunction& f, Point2 lo, Point2 hi, int n_points = 32,
                         unsigned seed = 12345);

enum class BCLabel { Dirichlet, Neumann };

struct ArcMembership {
  std::size_t arc_id = 0;
  BCLabel label = BCLabel::Dirichlet;
  double max_violation = 0.0;  // max |u| (Dirichlet) or |nu . grad u| (Neumann)
  bool pass = false;
};

/// Samples the boundary condition residual of f on each arc: |u| on Dirichlet
/// arcs, |nu . grad u| on Neumann arcs.
std::vector<ArcMembership> check_v2_membership(const DomainBoundary& boundary,
                                               const std::vector<BCLabel>& labels,
                                               const ManufacturedFunction& f,
                                               int samples_per_arc = 64, double tol = 1e-10);

struct IdentityBreakdown {
  double term_mixed = 0.0;  // integral of (d11 u)(d22 u)
  double term_cross = 0.0;  // integral of (d12 u)^2
  double term_curv = 0.0;   // boundary integral of kappa |grad u|^2
  double residual = 0.0;    // term_mixed - term_cross + term_curv / 2
};

struct IdentityQuadOptions {
  double domain_h = 0.01;    // boundary spacing of the fan triangulation
  double boundary_h = 0.01;  // panel length of the boundary quadrature
};

/// Evaluates both sides of the curvature integral identity. Domain integrals
/// use a fan triangulation of the sampled boundary polygon with a Gauss rule
/// of the given order (2..12); the boundary integral uses per-arc composite
/// Gauss-Legendre panels with analytic curvature, independent of the domain
/// triangulation.
IdentityBreakdown identity_residual(const DomainBoundary& boundary,
                                    const ManufacturedFunction& f, int quad_order,
                                    const IdentityQuadOptions& opts = {});

}  // namespace zaremba
