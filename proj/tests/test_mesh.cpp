#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "zaremba/geometry.hpp"
#include "zaremba/mesh.hpp"
#include "zaremba/shapes.hpp"

using namespace zaremba;

namespace {
constexpr double kPi = std::numbers::pi;

std::vector<Point2> boundary_ring(const Mesh& mesh) {
  std::vector<Point2> ring;
  for (const BoundaryEdge& be : mesh.boundary_edges) ring.push_back(mesh.vertices[be.a]);
  return ring;
}

void check_conformity(const Mesh& mesh, const DomainBoundary& boundary) {
  // Boundary edges form a single closed cycle in order.
  REQUIRE(!mesh.boundary_edges.empty());
  for (std::size_t i = 0; i < mesh.boundary_edges.size(); ++i) {
    const auto& cur = mesh.boundary_edges[i];
    const auto& next = mesh.boundary_edges[(i + 1) % mesh.boundary_edges.size()];
    CHECK(cur.b == next.a);
  }
  // Every boundary vertex lies on its tagged arc; corners are mesh vertices.
  for (const auto& bp : mesh.boundary_params) {
    const Point2 on_arc = boundary.arc(bp.arc_id).point_at(bp.s);
    CHECK(distance(on_arc, mesh.vertices[bp.vertex]) < 1e-10);
  }
  std::set<std::pair<long, long>> vertex_keys;
  for (const Point2& v : mesh.vertices) {
    vertex_keys.insert({std::lround(v.x * 1e12), std::lround(v.y * 1e12)});
  }
  for (const Point2& c : boundary.corners()) {
    CHECK(vertex_keys.count({std::lround(c.x * 1e12), std::lround(c.y * 1e12)}) == 1);
  }
  // Triangle areas sum to the boundary polygon area.
  const double polygon = signed_polygon_area(boundary_ring(mesh));
  CHECK(mesh_area(mesh) == doctest::Approx(polygon).epsilon(1e-12));
}
}  // namespace

TEST_CASE("unit square mesh at h=0.25 is conforming with exact area") {
  const DomainBoundary square = shapes::make_unit_square();
  const Mesh mesh = generate(square, 0.25);
  check_conformity(mesh, square);
  CHECK(mesh_area(mesh) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(quality(mesh).min_angle_deg >= 20.0);
  for (const auto& t : mesh.triangles) {
    const double area = 0.5 * cross(mesh.vertices[t[1]] - mesh.vertices[t[0]],
                                    mesh.vertices[t[2]] - mesh.vertices[t[0]]);
    CHECK(area > 0.0);
  }
}

TEST_CASE("disk mesh area approaches pi from below") {
  const DomainBoundary disk = shapes::make_disk(1.0);
  const Mesh mesh = generate(disk, 0.05);
  check_conformity(mesh, disk);
  const double area = mesh_area(mesh);
  CHECK(area > kPi - 0.01);
  CHECK(area < kPi);
}

TEST_CASE("mesh generation is deterministic") {
  const DomainBoundary trap = shapes::make_acute_trapezium(0.5, 0.35);
  const Mesh a = generate(trap, 0.1);
  const Mesh b = generate(trap, 0.1);
  REQUIRE(a.vertices.size() == b.vertices.size());
  REQUIRE(a.triangles.size() == b.triangles.size());
  for (std::size_t i = 0; i < a.vertices.size(); ++i) {
    CHECK(a.vertices[i].x == b.vertices[i].x);
    CHECK(a.vertices[i].y == b.vertices[i].y);
  }
  for (std::size_t i = 0; i < a.triangles.size(); ++i) CHECK(a.triangles[i] == b.triangles[i]);
}

TEST_CASE("refinement quadruples triangles and doubles boundary edges") {
  const DomainBoundary square = shapes::make_unit_square();
  const Mesh coarse = generate(square, 0.25);
  const Mesh fine = refine(coarse, square);
  CHECK(fine.triangles.size() == 4 * coarse.triangles.size());
  CHECK(fine.boundary_edges.size() == 2 * coarse.boundary_edges.size());
  check_conformity(fine, square);
  CHECK(mesh_area(fine) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("disk refinement recovers area at fourth order of the deficit") {
  const DomainBoundary disk = shapes::make_disk(1.0);
  Mesh mesh = generate(disk, 0.2);
  double prev_deficit = kPi - mesh_area(mesh);
  for (int level = 0; level < 3; ++level) {
    mesh = refine(mesh, disk);
    check_conformity(mesh, disk);
    const double deficit = kPi - mesh_area(mesh);
    CHECK(deficit > 0.0);
    const double ratio = prev_deficit / deficit;
    CHECK(ratio > 3.0);
    CHECK(ratio < 5.0);
    prev_deficit = deficit;
  }
}

TEST_CASE("quality of hand-built meshes") {
  Mesh structured;
  structured.vertices = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  structured.triangles = {{0, 1, 2}, {0, 2, 3}};
  CHECK(quality(structured).min_angle_deg == doctest::Approx(45.0));

  Mesh sliver;
  sliver.vertices = {{0, 0}, {1, 0}, {0.5, 0.05}};
  sliver.triangles = {{0, 1, 2}};
  CHECK(quality(sliver).min_angle_deg < 20.0);
}

TEST_CASE("generate refuses h larger than the domain diameter") {
  CHECK_THROWS_AS(generate(shapes::make_unit_square(), 5.0), std::invalid_argument);
  CHECK_THROWS_AS(generate(shapes::make_unit_square(), -0.1), std::invalid_argument);
}

TEST_CASE("generate validates grading parameters") {
  GradingSpec bad_factor{{0}, 1.5, 3};
  CHECK_THROWS_AS(generate(shapes::make_unit_square(), 0.25, bad_factor),
                  std::invalid_argument);
  GradingSpec bad_corner{{7}, 0.15, 3};
  CHECK_THROWS_AS(generate(shapes::make_unit_square(), 0.25, bad_corner),
                  std::invalid_argument);
}

TEST_CASE("graded mesh has the requested smallest boundary edge") {
  const DomainBoundary tri = shapes::make_triangle({0, 0}, {2, 0}, {0, 1});
  GradingSpec grading;
  grading.corners = {1};  // corner at (2,0)
  grading.factor = 0.15;
  grading.levels = 4;
  const double h = 0.2;
  const Mesh mesh = generate(tri, h, grading);
  check_conformity(mesh, tri);

  double shortest = 1e30;
  double shortest_near_corner = 1e30;
  const Point2 corner{2, 0};
  for (const BoundaryEdge& be : mesh.boundary_edges) {
    const double len = distance(mesh.vertices[be.a], mesh.vertices[be.b]);
    shortest = std::min(shortest, len);
    if (distance(mesh.vertices[be.a], corner) < 2 * h ||
        distance(mesh.vertices[be.b], corner) < 2 * h) {
      shortest_near_corner = std::min(shortest_near_corner, len);
    }
  }
  const double expected = h * std::pow(0.15, 4);
  CHECK(shortest == doctest::Approx(expected).epsilon(0.5));
  CHECK(shortest_near_corner == shortest);
}

TEST_CASE("thin obtuse triangles mesh under the reduced quality floor") {
  const DomainBoundary tri = shapes::make_obtuse_triangle(170.0 * kPi / 180.0);
  const double width = tri.corners()[2].y;  // apex height
  const Mesh mesh = generate(tri, std::max(width / 2.0, 0.004));
  check_conformity(mesh, tri);
  const double floor_deg = quality_floor_deg(tri);
  CHECK(floor_deg < 20.0);
  CHECK(quality(mesh).min_angle_deg >= floor_deg);
}

TEST_CASE("mesh text dump lists sections with matching counts") {
  const DomainBoundary square = shapes::make_unit_square();
  const Mesh mesh = generate(square, 0.5);
  const std::string text = mesh_to_text(mesh);
  CHECK(text.rfind("# zaremba mesh v1\n", 0) == 0);
  CHECK(text.find("vertices " + std::to_string(mesh.vertices.size())) != std::string::npos);
  CHECK(text.find("triangles " + std::to_string(mesh.triangles.size())) != std::string::npos);
  CHECK(text.find("boundary_edges " + std::to_string(mesh.boundary_edges.size())) !=
        std::string::npos);
  // Line count: header + 3 section headers + h line + one line per item.
  const std::size_t lines = std::count(text.begin(), text.end(), '\n');
  CHECK(lines == 5 + mesh.vertices.size() + mesh.triangles.size() + mesh.boundary_edges.size());
}

TEST_CASE("boundary edges never span two arcs") {
  const DomainBoundary trap = shapes::make_acute_trapezium(0.4, 0.3);
  const Mesh mesh = generate(trap, 0.15);
  // Each edge's endpoints both carry a parameter on the edge's arc.
  for (const BoundaryEdge& be : mesh.boundary_edges) {
    auto has_param = [&](int v) {
      for (const auto& bp : mesh.boundary_params) {
        if (bp.vertex == v && bp.arc_id == be.arc_id) return true;
      }
      return false;
    };
    CHECK(has_param(be.a));
    CHECK(has_param(be.b));
  }
}
