#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "zaremba/fem.hpp"
#include "zaremba/geometry.hpp"
#include "zaremba/hypotheses.hpp"
#include "zaremba/identity.hpp"

namespace zaremba {

enum class ScenarioKind { Check, Solve, Compare, Sweep, Identity, Inclusion };

enum class Verdict { VerifiedStrict, EqualWithinTol, Inconclusive };

std::string to_string(Verdict v);
std::string to_string(ScenarioKind k);

struct SolverParams {
  double h0 = 0.1;
  int levels = 4;
  double tol = 1e-10;
  bool grading = false;
};

struct SweepSpec {
  std::string family;  // obtuse_triangle | right_triangle | acute_trapezium | bent_quadrilateral
  std::vector<double> values;
  std::string gamma_prime = "S";  // triangle families: compare S or M against L
  double height = 0.35;           // acute_trapezium: height of the shorter base
};

struct IdentitySpec {
  std::optional<ManufacturedFunction> function;
  std::vector<BCLabel> labels;
  int quad_order = 8;
  IdentityQuadOptions quad;
};

struct InclusionSpec {
  std::vector<std::size_t> gamma;      // the larger Dirichlet set
  std::vector<std::size_t> gamma_sub;  // subset of gamma
};

struct ScenarioConfig {
  std::string name = "scenario";
  ScenarioKind kind = ScenarioKind::Compare;
  std::shared_ptr<const DomainBoundary> domain;
  std::vector<std::size_t> gamma;
  std::size_t gamma_prime = 0;
  SolverParams solver;
  bool expect_equal = false;  // user-declared symmetric pair
  std::optional<SweepSpec> sweep;
  std::optional<IdentitySpec> identity;
  std::optional<InclusionSpec> inclusion;
};

/// Parses the JSON scenario format (see README for the schema). Throws
/// std::invalid_argument with a descriptive message on malformed input.
ScenarioConfig parse_config(const std::string& json_text);
ScenarioConfig load_config_file(const std::string& path);

struct LevelResult {
  double h = 0.0;
  double lambda = 0.0;
  int n_dofs = 0;
  double residual = 0.0;
};

struct SideResult {
  std::vector<std::size_t> arc_ids;
  std::vector<LevelResult> levels;
  Extrapolation extrapolation;
};

struct ComparisonReport {
  std::string name;
  HypothesisReport hypothesis;
  MonotonicityProfile profile;  // along the remainder, for plotting
  SideResult gamma;
  SideResult gamma_prime;
  double margin = 0.0;          // lambda_inf(gamma) - lambda_inf(gamma_prime)
  double combined_error = 0.0;  // sum of the two extrapolation error estimates
  bool symmetric_pair = false;
  Verdict verdict = Verdict::Inconclusive;
};

/// Hypothesis checks plus eigenvalue studies for both boundary-condition
/// choices on the same mesh family, with the margin-vs-error verdict.
ComparisonReport compare(const ScenarioConfig& config);

struct SweepPoint {
  std::size_t index = 0;
  double value = 0.0;
  std::string status = "ok";  // "error: ..." when the point failed
  std::optional<ComparisonReport> report;
};

/// One comparison per grid value of the configured family. Points run in
/// parallel (capped by ZAREMBA_THREADS); output order follows the grid.
std::vector<SweepPoint> run_sweep(const ScenarioConfig& config);

/// Expands a sweep family value into a concrete compare config.
ScenarioConfig sweep_point_config(const ScenarioConfig& config, double value);

struct InclusionLevel {
  double h = 0.0;
  double lambda_sub = 0.0;
  double lambda_full = 0.0;
  bool monotone = false;  // lambda_sub <= lambda_full (+ solver slack)
};

struct InclusionReport {
  std::string name;
  std::vector<std::size_t> gamma;
  std::vector<std::size_t> gamma_sub;
  std::vector<InclusionLevel> levels;
  Extrapolation ex_full, ex_sub;
  double margin = 0.0;
  double combined_error = 0.0;
  bool all_levels_monotone = false;
  bool proper_subset = false;
  Verdict verdict = Verdict::Inconclusive;
};

/// Discrete monotonicity of the Dirichlet-set inclusion on the same meshes.
InclusionReport run_inclusion(const ScenarioConfig& config);

struct SolveReport {
  std::string name;
  std::vector<std::size_t> dirichlet_arcs;
  std::vector<LevelResult> levels;
  Extrapolation extrapolation;
};

/// Refinement study for a single Dirichlet set (config.gamma).
SolveReport run_solve(const ScenarioConfig& config);

struct IdentityReport {
  std::string name;
  std::vector<ArcMembership> membership;
  IdentityBreakdown breakdown;
  double derivative_consistency = 0.0;
  int quad_order = 8;
};

IdentityReport run_identity(const ScenarioConfig& config);

/// Dirichlet-Neumann transition corners of the given Dirichlet arc set whose
/// interior angle exceeds pi/2 (where the eigenfunction loses H^2 regularity
/// and uniform meshes converge below second order).
std::vector<std::size_t> transition_grading_corners(const DomainBoundary& boundary,
                                                    const std::vector<std::size_t>& dirichlet);

/// True when gamma and gamma_prime are parallel straight segments of equal
/// length and the corner set is invariant under the reflection exchanging
/// them (the configuration with equal eigenvalues by symmetry).
bool detect_symmetric_pair(const DomainBoundary& boundary, const BoundaryPartition& partition);

}  // namespace zaremba
