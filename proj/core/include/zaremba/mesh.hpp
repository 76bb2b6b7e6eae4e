#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "zaremba/geometry.hpp"

namespace zaremba {

/// Geometric refinement toward selected corners: the smallest boundary edge
/// at a listed corner is factor^levels * h, connected to the uniform region
/// by edges that at most double in size (keeps the mesh quality floor).
struct GradingSpec {
  std::vector<std::size_t> corners;
  double factor = 0.15;
  int levels = 3;
};

struct BoundaryEdge {
  int a = 0, b = 0;  // vertex indices, traversed in positive orientation
  std::size_t arc_id = 0;
};

struct BoundaryVertexParam {
  int vertex = 0;
  std::size_t arc_id = 0;
  double s = 0.0;  // arclength on the arc; corners carry one entry per arc
};

/// Conforming triangulation with boundary edges tagged by source arc.
struct Mesh {
  std::vector<Point2> vertices;
  std::vector<std::array<int, 3>> triangles;  // counterclockwise
  std::vector<BoundaryEdge> boundary_edges;   // single closed cycle
  std::vector<BoundaryVertexParam> boundary_params;
  double h = 0.0;  // max edge length
  std::optional<GradingSpec> grading;
};

/// Delaunay mesh of the sampled boundary polygon plus interior lattice
/// points. Convexity makes the hull coincide with the boundary polygon, so
/// conformity (and per-arc edge tags) is automatic; corners are always mesh
/// vertices. Throws if h exceeds the domain diameter or the quality floor
/// cannot be met.
Mesh generate(const DomainBoundary& boundary, double h,
              const std::optional<GradingSpec>& grading = {});

/// Red refinement: each triangle splits into four via edge midpoints; new
/// boundary midpoints are snapped onto the true arc at the midpoint
/// arclength.
Mesh refine(const Mesh& mesh, const DomainBoundary& boundary);

struct QualityStats {
  double min_angle_deg = 0.0;
  double max_aspect = 0.0;  // longest edge over shortest altitude
  double h_min = 0.0;
  double h_max = 0.0;
};

QualityStats quality(const Mesh& mesh);

double mesh_area(const Mesh& mesh);

/// Plain-text node/element dump (vertices, triangles, arc-tagged boundary
/// edges; see README for the exact layout) for external visualization.
std::string mesh_to_text(const Mesh& mesh);

/// Quality floor used by generate(): 20 degrees, reduced when the domain
/// itself has a corner sharper than that (the first triangle at such a corner
/// cannot beat the corner angle).
double quality_floor_deg(const DomainBoundary& boundary);

}  // namespace zaremba
