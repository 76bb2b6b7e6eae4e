#pragma once

#include "zaremba/geometry.hpp"

namespace zaremba::shapes {

/// Axis-aligned rectangle [0,w] x [0,h], counterclockwise from the origin.
/// Arc ids: 0 bottom, 1 right, 2 top, 3 left.
DomainBoundary make_rectangle(double width, double height);

DomainBoundary make_unit_square();

/// Triangle with vertices in counterclockwise order. Arc ids: 0 a->b, 1 b->c, 2 c->a.
DomainBoundary make_triangle(Point2 a, Point2 b, Point2 c);

/// Disk of given radius centered at the origin, as two half-circle arcs
/// (corners at (r,0) and (-r,0) with straight interior angle pi).
DomainBoundary make_disk(double radius);

/// Obtuse or right triangle with its longest side on the x-axis from (0,0) to
/// (1,0) and apex angle `apex_angle` (>= pi/2). The two base angles share
/// pi - apex_angle in proportion split : (1-split), the larger one at the
/// origin, so the arcs in positive orientation are: 0 longest side,
/// 1 medium side, 2 shortest side.
DomainBoundary make_obtuse_triangle(double apex_angle, double split = 0.55);

/// Isosceles trapezium with longer base [0,1] on the x-axis and shorter
/// parallel base of length `base_ratio` centered above it at `height`.
/// Arc ids: 0 longer base, 1 right leg, 2 shorter base, 3 left leg.
DomainBoundary make_acute_trapezium(double base_ratio, double height);

/// Convex quadrilateral close to an obtuse triangle: a vertical side from
/// (0,1) down to (0,0), one side of slope -1, then a side of slope
/// -tan(pi/4 - delta), closed by the long side back to (0,1). For delta -> 0
/// it degenerates to a triangle. Arc ids: 0 vertical, 1 slope -1,
/// 2 slope -tan(pi/4-delta), 3 closing side.
DomainBoundary make_bent_quadrilateral(double delta, double leg = 1.0, double tail = 1.5);

/// Convex domain bounded by a vertical segment from (0,height) to (0,0) and a
/// smooth bulge x = (slope/height) * y * (height - y) closing it. The interior
/// angles at both segment endpoints equal atan(slope). Arc ids: 0 segment,
/// 1 bulge.
DomainBoundary make_bulge_domain(double height = 1.0, double slope = 1.2);

}  // namespace zaremba::shapes
