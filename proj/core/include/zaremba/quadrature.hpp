#pragma once

#include <vector>

#include "zaremba/geometry.hpp"

namespace zaremba {

struct QuadNode1D {
  double x;  // on [-1, 1]
  double w;
};

/// Gauss-Legendre nodes and weights on [-1, 1], exact for degree 2n-1.
std::vector<QuadNode1D> gauss_legendre(int n);

struct TriangleQuadNode {
  double l0, l1, l2;  // barycentric coordinates
  double w;           // weights sum to 1
};

/// Quadrature on the reference triangle, exact for polynomials of total
/// degree <= order (order in 1..12). Integral over a physical triangle T is
/// area(T) * sum w_i f(x_i). Symmetric rules where tabulated, a Duffy-style
/// tensor Gauss rule otherwise.
std::vector<TriangleQuadNode> triangle_rule(int order);

template <typename F>
double integrate_triangle(Point2 a, Point2 b, Point2 c, int order, F&& f) {
  const double area = 0.5 * cross(b - a, c - a);
  double sum = 0.0;
  for (const TriangleQuadNode& q : triangle_rule(order)) {
    sum += q.w * f(a * q.l0 + b * q.l1 + c * q.l2);
  }
  return area * sum;
}

}  // namespace zaremba
