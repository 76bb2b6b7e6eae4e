#include <benchmark/benchmark.h>

#include "zaremba/fem.hpp"
#include "zaremba/geometry.hpp"
#include "zaremba/hypotheses.hpp"
#include "zaremba/identity.hpp"
#include "zaremba/mesh.hpp"
#include "zaremba/shapes.hpp"

namespace {

using namespace zaremba;

void bm_boundary_samples_disk(benchmark::State& state) {
  const DomainBoundary disk = shapes::make_disk(1.0);
  const double h = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(boundary_samples(disk, h));
  }
}
BENCHMARK(bm_boundary_samples_disk)->Arg(32)->Arg(128)->Arg(512);

void bm_graph_arc_frames(benchmark::State& state) {
  const DomainBoundary dom = shapes::make_bulge_domain(1.0, 1.5);
  const BoundaryArc& arc = dom.arc(1);
  for (auto _ : state) {
    double acc = 0.0;
    for (int k = 0; k < 256; ++k) {
      const double s = arc.length() * (k + 0.5) / 256.0;
      acc += arc.frame_at(s).tau.x + arc.curvature_at(s);
    }
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(bm_graph_arc_frames);

void bm_mesh_generate_square(benchmark::State& state) {
  const DomainBoundary square = shapes::make_unit_square();
  const double h = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(generate(square, h));
  }
  state.SetComplexityN(state.range(0) * state.range(0));
}
BENCHMARK(bm_mesh_generate_square)->Arg(8)->Arg(16)->Arg(32)->Arg(64)->Complexity();

void bm_mesh_refine_disk(benchmark::State& state) {
  const DomainBoundary disk = shapes::make_disk(1.0);
  const Mesh base = generate(disk, 0.1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(refine(base, disk));
  }
}
BENCHMARK(bm_mesh_refine_disk);

void bm_assemble_square(benchmark::State& state) {
  const DomainBoundary square = shapes::make_unit_square();
  const Mesh mesh = generate(square, 1.0 / static_cast<double>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(assemble(mesh, {0, 1, 2, 3}));
  }
  state.counters["n_vertices"] = static_cast<double>(mesh.vertices.size());
}
BENCHMARK(bm_assemble_square)->Arg(16)->Arg(32)->Arg(64);

void bm_solve_smallest_square(benchmark::State& state) {
  const DomainBoundary square = shapes::make_unit_square();
  const Mesh mesh = generate(square, 1.0 / static_cast<double>(state.range(0)));
  const AssembledSystem sys = assemble(mesh, {1});
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_smallest(sys.stiffness, sys.mass));
  }
  state.counters["n_dofs"] = static_cast<double>(sys.stiffness.dimension());
}
BENCHMARK(bm_solve_smallest_square)->Arg(16)->Arg(32)->Arg(64);

void bm_monotonicity_profile(benchmark::State& state) {
  const DomainBoundary dom = shapes::make_bulge_domain(1.0, 1.5);
  const BoundaryPartition part = make_partition(dom, {1}, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(monotonicity_profile(dom, part, 256));
  }
}
BENCHMARK(bm_monotonicity_profile);

void bm_identity_disk(benchmark::State& state) {
  const DomainBoundary disk = shapes::make_disk(1.0);
  const ManufacturedFunction f =
      ManufacturedFunction::polynomial({{1.0, 0.0, -1.0}, {0.0}, {-1.0}});
  const double h = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(identity_residual(disk, f, 8, {h, h}));
  }
}
BENCHMARK(bm_identity_disk)->Arg(32)->Arg(128);

}  // namespace

BENCHMARK_MAIN();
