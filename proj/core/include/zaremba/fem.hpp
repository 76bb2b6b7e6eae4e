#pragma once

#include <cstddef>
#include <set>
#include <span>
#include <vector>

#include "zaremba/mesh.hpp"

namespace zaremba {

/// Symmetric sparse matrix in compressed-row storage (full pattern kept for
/// cheap mat-vec).
class SparseSymMatrix {
 public:
  struct Triplet {
    int row, col;
    double value;
  };

  SparseSymMatrix() = default;
  static SparseSymMatrix from_triplets(int dimension, std::vector<Triplet> entries);

  int dimension() const { return dim_; }
  void multiply(std::span<const double> x, std::span<double> y) const;
  std::vector<double> diagonal() const;
  double quad_form(std::span<const double> x) const;  // x^T A x

  template <typename F>
  void for_each_entry(F&& f) const {
    for (int r = 0; r < dim_; ++r) {
      for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) f(r, col_[k], val_[k]);
    }
  }

 private:
  int dim_ = 0;
  std::vector<int> row_ptr_, col_;
  std::vector<double> val_;
};

/// Free/constrained split of mesh vertices. A vertex is constrained iff it
/// lies on the closure of a Dirichlet-labeled arc, so corners shared with a
/// Neumann arc are constrained.
struct DofMap {
  std::vector<int> free_vertices;
  std::vector<int> constrained_vertices;
  std::vector<int> vertex_to_free;  // -1 for constrained
};

struct AssembledSystem {
  SparseSymMatrix stiffness;
  SparseSymMatrix mass;
  DofMap dofs;
};

/// Exact P1 stiffness and mass matrices restricted to free vertices.
/// Throws if the Dirichlet arc set constrains no vertex (a pure Neumann
/// problem has lowest eigenvalue 0 and is out of scope).
AssembledSystem assemble(const Mesh& mesh, const std::set<std::size_t>& dirichlet_arc_ids);

/// Stiffness and mass over all vertices, nothing eliminated. Constants span
/// the stiffness kernel; the mass entries sum to the mesh area.
std::pair<SparseSymMatrix, SparseSymMatrix> assemble_unconstrained(const Mesh& mesh);

struct EigenResult {
  double lambda = 0.0;
  std::vector<double> vector;  // values at free vertices, mean-positive sign
  double residual = 0.0;       // ||K u - lambda M u|| / (max(1, lambda) ||M u||)
  double h = 0.0;              // filled by the caller that owns the mesh
  int n_dofs = 0;
};

struct SolveOptions {
  double tol = 1e-10;
  int max_power_iterations = 500;
  int max_cg_iterations = 10000;
};

/// Smallest eigenpair of K u = lambda M u by inverse power iteration with
/// Jacobi-preconditioned conjugate-gradient inner solves.
EigenResult solve_smallest(const SparseSymMatrix& K, const SparseSymMatrix& M,
                           const SolveOptions& opts = {});

double rayleigh_quotient(std::span<const double> u, const SparseSymMatrix& K,
                         const SparseSymMatrix& M);

struct Extrapolation {
  double lambda_inf = 0.0;
  double observed_order = 0.0;
  double error_estimate = 0.0;
  bool flagged = false;  // non-monotone sequence or order outside (0.5, 2.5]
};

/// Fits lambda_h ~ lambda_inf + C h^p through the last three of >= 3 results
/// on meshes with halving h.
Extrapolation extrapolate(const std::vector<EigenResult>& results);

/// Convenience wrapper: assemble on the mesh, solve, and fill h / n_dofs.
EigenResult solve_on_mesh(const Mesh& mesh, const std::set<std::size_t>& dirichlet_arc_ids,
                          const SolveOptions& opts = {});

}  // namespace zaremba
