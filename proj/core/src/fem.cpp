#include "zaremba/fem.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>

namespace zaremba {

namespace {

struct CgFailure {
  bool indefinite = false;  // shifted operator lost positive definiteness
  int iterations = 0;
  double residual = 0.0;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

// Jacobi-preconditioned CG for the (possibly shifted) SPD operator
// v -> K v - sigma M v. Solves A x = b with x overwritten; reports failure
// instead of throwing so callers can retreat the shift.
std::optional<CgFailure> conjugate_gradient(const SparseSymMatrix& K, const SparseSymMatrix& M,
                                            double sigma, std::span<const double> b,
                                            std::vector<double>& x, double rtol,
                                            int max_iterations) {
  const int n = K.dimension();
  std::vector<double> r(n), z(n), p(n), Ap(n), Mp(n);
  std::vector<double> diag = K.diagonal();
  if (sigma != 0.0) {
    const std::vector<double> mdiag = M.diagonal();
    for (int i = 0; i < n; ++i) {
      diag[i] = std::max(diag[i] - sigma * mdiag[i], 0.05 * diag[i]);
    }
  }

  std::fill(x.begin(), x.end(), 0.0);
  std::copy(b.begin(), b.end(), r.begin());
  double bnorm = 0.0;
  for (double v : b) bnorm += v * v;
  bnorm = std::sqrt(bnorm);
  if (bnorm == 0.0) return std::nullopt;

  auto apply = [&](const std::vector<double>& v, std::vector<double>& out) {
    K.multiply(v, out);
    if (sigma != 0.0) {
      M.multiply(v, Mp);
      for (int i = 0; i < n; ++i) out[i] -= sigma * Mp[i];
    }
  };

  for (int i = 0; i < n; ++i) z[i] = r[i] / diag[i];
  p = z;
  double rz = std::inner_product(r.begin(), r.end(), z.begin(), 0.0);
  double rnorm = bnorm;

  for (int it = 1; it <= max_iterations; ++it) {
    apply(p, Ap);
    const double pAp = std::inner_product(p.begin(), p.end(), Ap.begin(), 0.0);
    if (!(pAp > 0.0)) return CgFailure{true, it, rnorm / bnorm};
    const double alpha = rz / pAp;
    rnorm = 0.0;
    for (int i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * Ap[i];
      rnorm += r[i] * r[i];
    }
    rnorm = std::sqrt(rnorm);
    if (rnorm <= rtol * bnorm) return std::nullopt;
    for (int i = 0; i < n; ++i) z[i] = r[i] / diag[i];
    const double rz_next = std::inner_product(r.begin(), r.end(), z.begin(), 0.0);
    const double beta = rz_next / rz;
    rz = rz_next;
    for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }
  return CgFailure{false, max_iterations, rnorm / bnorm};
}

}  // namespace

SparseSymMatrix SparseSymMatrix::from_triplets(int dimension, std::vector<Triplet> entries) {
  std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  SparseSymMatrix m;
  m.dim_ = dimension;
  m.row_ptr_.assign(dimension + 1, 0);
  for (std::size_t i = 0; i < entries.size();) {
    std::size_t j = i;
    double sum = 0.0;
    while (j < entries.size() && entries[j].row == entries[i].row &&
           entries[j].col == entries[i].col) {
      sum += entries[j].value;
      ++j;
    }
    m.col_.push_back(entries[i].col);
    m.val_.push_back(sum);
    ++m.row_ptr_[entries[i].row + 1];
    i = j;
  }
  for (int r = 0; r < dimension; ++r) m.row_ptr_[r + 1] += m.row_ptr_[r];
  return m;
}

void SparseSymMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  for (int r = 0; r < dim_; ++r) {
    double sum = 0.0;
    for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) sum += val_[k] * x[col_[k]];
    y[r] = sum;
  }
}

std::vector<double> SparseSymMatrix::diagonal() const {
  std::vector<double> d(dim_, 0.0);
  for (int r = 0; r < dim_; ++r) {
    for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
      if (col_[k] == r) d[r] = val_[k];
    }
  }
  return d;
}

double SparseSymMatrix::quad_form(std::span<const double> x) const {
  double sum = 0.0;
  for (int r = 0; r < dim_; ++r) {
    for (int k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) sum += x[r] * val_[k] * x[col_[k]];
  }
  return sum;
}

namespace {

std::pair<SparseSymMatrix, SparseSymMatrix> assemble_mapped(const Mesh& mesh,
                                                            const std::vector<int>& index,
                                                            int n) {
  std::vector<SparseSymMatrix::Triplet> kt, mt;
  for (const auto& t : mesh.triangles) {
    const Point2 p0 = mesh.vertices[t[0]], p1 = mesh.vertices[t[1]], p2 = mesh.vertices[t[2]];
    const double area = 0.5 * cross(p1 - p0, p2 - p0);
    // Barycentric gradients: grad l_i = rot90(p_{i+2} - p_{i+1}) / (2 area).
    const Vec2 e[3] = {p2 - p1, p0 - p2, p1 - p0};
    Vec2 grad[3];
    for (int i = 0; i < 3; ++i) grad[i] = Vec2{-e[i].y, e[i].x} / (2.0 * area);

    for (int i = 0; i < 3; ++i) {
      const int gi = index[t[i]];
      if (gi < 0) continue;
      for (int j = 0; j < 3; ++j) {
        const int gj = index[t[j]];
        if (gj < 0) continue;
        kt.push_back({gi, gj, area * dot(grad[i], grad[j])});
        mt.push_back({gi, gj, area / (i == j ? 6.0 : 12.0)});
      }
    }
  }
  return {SparseSymMatrix::from_triplets(n, std::move(kt)),
          SparseSymMatrix::from_triplets(n, std::move(mt))};
}

}  // namespace

AssembledSystem assemble(const Mesh& mesh, const std::set<std::size_t>& dirichlet_arc_ids) {
  if (dirichlet_arc_ids.empty()) {
    throw std::invalid_argument("Dirichlet arc set must be non-empty");
  }
  const int nv = static_cast<int>(mesh.vertices.size());

  DofMap dofs;
  dofs.vertex_to_free.assign(nv, -1);
  std::vector<bool> constrained(nv, false);
  for (const BoundaryEdge& be : mesh.boundary_edges) {
    if (dirichlet_arc_ids.count(be.arc_id)) {
      constrained[be.a] = true;
      constrained[be.b] = true;
    }
  }
  for (int v = 0; v < nv; ++v) {
    if (constrained[v]) {
      dofs.constrained_vertices.push_back(v);
    } else {
      dofs.vertex_to_free[v] = static_cast<int>(dofs.free_vertices.size());
      dofs.free_vertices.push_back(v);
    }
  }
  if (dofs.constrained_vertices.empty()) {
    throw std::invalid_argument("Dirichlet arc ids constrain no boundary vertex");
  }

  AssembledSystem sys;
  const int n = static_cast<int>(dofs.free_vertices.size());
  auto [k, m] = assemble_mapped(mesh, dofs.vertex_to_free, n);
  sys.stiffness = std::move(k);
  sys.mass = std::move(m);
  sys.dofs = std::move(dofs);
  return sys;
}

std::pair<SparseSymMatrix, SparseSymMatrix> assemble_unconstrained(const Mesh& mesh) {
  std::vector<int> identity(mesh.vertices.size());
  std::iota(identity.begin(), identity.end(), 0);
  return assemble_mapped(mesh, identity, static_cast<int>(mesh.vertices.size()));
}

double rayleigh_quotient(std::span<const double> u, const SparseSymMatrix& K,
                         const SparseSymMatrix& M) {
  const double mu = M.quad_form(u);
  if (!(mu > 0.0)) throw std::invalid_argument("rayleigh_quotient needs a non-zero vector");
  return K.quad_form(u) / mu;
}

EigenResult solve_smallest(const SparseSymMatrix& K, const SparseSymMatrix& M,
                           const SolveOptions& opts) {
  if (!(opts.tol > 0.0)) throw std::invalid_argument("solver tolerance must be positive");
  const int n = K.dimension();
  if (n == 0) throw std::invalid_argument("empty system");

  std::vector<double> x(n, 1.0), y(n), Mx(n), Kx(n);
  const double cg_rtol = std::min(1e-12, 0.01 * opts.tol);

  auto m_normalize = [&](std::vector<double>& v) {
    const double norm = std::sqrt(M.quad_form(v));
    for (double& c : v) c /= norm;
  };
  m_normalize(x);

  // Inverse power iteration with an adaptive spectral shift. Plain inverse
  // iteration stalls when lambda_2/lambda_1 is close to 1 (thin domains);
  // shifting by sigma < lambda_1 restores a useful convergence factor
  // (lambda_1 - sigma)/(lambda_2 - sigma). The Rayleigh quotient bounds
  // lambda_1 from above, so the margin below lambda keeps K - sigma M
  // positive definite; a CG breakdown retreats the shift halfway toward the
  // last safe value.
  double lambda = K.quad_form(x);
  double residual = 0.0;
  double sigma = 0.0, sigma_safe = 0.0;
  bool converged = false;
  for (int it = 0; it < opts.max_power_iterations && !converged; ++it) {
    M.multiply(x, Mx);
    for (int attempt = 0;; ++attempt) {
      const auto failure =
          conjugate_gradient(K, M, sigma, Mx, y, cg_rtol, opts.max_cg_iterations);
      if (!failure) break;
      if (sigma == sigma_safe || attempt > 60) {
        throw std::runtime_error(
            "conjugate gradient failed (shift " + fmt(sigma) + ", residual " +
            fmt(failure->residual) + " after " + std::to_string(failure->iterations) +
            " iterations)");
      }
      sigma = 0.5 * (sigma + sigma_safe);
    }
    sigma_safe = sigma;
    m_normalize(y);
    lambda = K.quad_form(y);  // y is M-normalized

    K.multiply(y, Kx);
    M.multiply(y, Mx);
    double rnorm = 0.0, mnorm = 0.0;
    for (int i = 0; i < n; ++i) {
      const double ri = Kx[i] - lambda * Mx[i];
      rnorm += ri * ri;
      mnorm += Mx[i] * Mx[i];
    }
    // Scale-invariant residual: the raw ratio ||Ku - lambda Mu|| / ||Mu||
    // carries the units of lambda, which would make a fixed tolerance
    // unreachable on domains with large eigenvalues.
    residual = std::sqrt(rnorm) / (std::sqrt(mnorm) * std::max(1.0, lambda));
    converged = residual <= opts.tol;
    x = y;
    sigma = std::max(0.0, lambda * (1.0 - std::max(4.0 * residual, 1e-3)));
  }
  if (!converged) {
    throw std::runtime_error("inverse power iteration did not reach tolerance " +
                             fmt(opts.tol) + "; residual " + fmt(residual) + " after " +
                             std::to_string(opts.max_power_iterations) + " iterations");
  }

  double mean = std::accumulate(x.begin(), x.end(), 0.0);
  if (mean < 0.0) {
    for (double& c : x) c = -c;
  }

  EigenResult result;
  result.lambda = lambda;
  result.vector = std::move(x);
  result.residual = residual;
  result.n_dofs = n;
  return result;
}

Extrapolation extrapolate(const std::vector<EigenResult>& results) {
  if (results.size() < 3) {
    throw std::invalid_argument("extrapolation needs at least three refinement levels");
  }
  const double l1 = results[results.size() - 3].lambda;
  const double l2 = results[results.size() - 2].lambda;
  const double l3 = results[results.size() - 1].lambda;
  const double d1 = l1 - l2, d2 = l2 - l3;

  Extrapolation ex;
  const double scale = std::abs(l3) + 1e-300;
  if (d1 * d2 <= 0.0 || std::abs(d2) >= std::abs(d1) || std::abs(d2) < 1e-15 * scale) {
    // Non-monotone or stalled sequence: keep the finest value and report a
    // conservative error.
    ex.lambda_inf = l3;
    ex.observed_order = 0.0;
    ex.error_estimate = std::max(std::abs(d1), std::abs(d2));
    ex.flagged = true;
    return ex;
  }
  const double p = std::log2(d1 / d2);
  ex.observed_order = p;
  ex.lambda_inf = l3 - d2 / (std::pow(2.0, p) - 1.0);
  ex.error_estimate = std::abs(l3 - ex.lambda_inf);
  ex.flagged = !(p > 0.5 && p <= 2.5);
  return ex;
}

EigenResult solve_on_mesh(const Mesh& mesh, const std::set<std::size_t>& dirichlet_arc_ids,
                          const SolveOptions& opts) {
  const AssembledSystem sys = assemble(mesh, dirichlet_arc_ids);
  EigenResult result = solve_smallest(sys.stiffness, sys.mass, opts);
  result.h = mesh.h;
  return result;
}

}  // namespace zaremba
