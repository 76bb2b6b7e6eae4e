#pragma once

#include <array>
#include <vector>

#include "zaremba/geometry.hpp"

namespace zaremba::detail {

/// Delaunay triangulation of a planar point set by incremental insertion
/// (Bowyer-Watson). Points are inserted in the given order inside an
/// enclosing super-triangle; the result covers the convex hull of the input
/// and every triangle is counterclockwise. Deterministic for a fixed input.
std::vector<std::array<int, 3>> delaunay_triangulation(const std::vector<Point2>& points);

}  // namespace zaremba::detail
