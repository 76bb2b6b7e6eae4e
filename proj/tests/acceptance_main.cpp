// Acceptance suite: runs every acceptance criterion end to end and prints
// one PASS/FAIL line per criterion. Exit code is the number of failures.

#include <sys/wait.h>

#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "zaremba/fem.hpp"
#include "zaremba/geometry.hpp"
#include "zaremba/hypotheses.hpp"
#include "zaremba/identity.hpp"
#include "zaremba/mesh.hpp"
#include "zaremba/report.hpp"
#include "zaremba/scenario.hpp"
#include "zaremba/shapes.hpp"

using namespace zaremba;

namespace {

constexpr double kPi = std::numbers::pi;

std::string g_cli_path;
std::string g_config_dir;
std::string g_out_dir = "acceptance_out";

int g_failures = 0;

class Check {
 public:
  explicit Check(std::string context) : context_(std::move(context)) {}

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass_ = false;
      if (!details_.empty()) details_ += "; ";
      details_ += what;
    }
  }

  template <typename T>
  void close(T actual, T expected, double rel_tol, const std::string& what) {
    const double err = std::abs(actual - expected) / std::max(1e-300, std::abs(expected));
    std::ostringstream msg;
    msg << what << " = " << actual << " vs " << expected << " (rel err " << err << " > "
        << rel_tol << ")";
    require(err <= rel_tol, msg.str());
  }

  bool pass() const { return pass_; }
  const std::string& details() const { return details_; }

 private:
  std::string context_;
  bool pass_ = true;
  std::string details_;
};

void run_criterion(int id, const std::string& description,
                   const std::function<void(Check&)>& body) {
  Check check(description);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(check);
  } catch (const std::exception& e) {
    check.require(false, std::string("exception: ") + e.what());
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!check.pass()) ++g_failures;
  std::printf("criterion %d: %s  %s (%.1f s)%s%s\n", id, check.pass() ? "PASS" : "FAIL",
              description.c_str(), seconds, check.pass() ? "" : " -- ",
              check.pass() ? "" : check.details().c_str());
  std::fflush(stdout);
}

ScenarioConfig shipped(const std::string& file) {
  return load_config_file(g_config_dir + "/" + file);
}

// Independent reference for criterion 9: dense generalized eigensolve.
double dense_smallest_reference(const SparseSymMatrix& K, const SparseSymMatrix& M) {
  Eigen::MatrixXd Kd = Eigen::MatrixXd::Zero(K.dimension(), K.dimension());
  Eigen::MatrixXd Md = Eigen::MatrixXd::Zero(M.dimension(), M.dimension());
  K.for_each_entry([&](int r, int c, double v) { Kd(r, c) = v; });
  M.for_each_entry([&](int r, int c, double v) { Md(r, c) = v; });
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(Kd, Md);
  return solver.eigenvalues()(0);
}

double timed_compare(const ScenarioConfig& config, ComparisonReport& out) {
  const auto t0 = std::chrono::steady_clock::now();
  out = compare(config);
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------------------

void criterion1(Check& check) {
  const auto t0 = std::chrono::steady_clock::now();

  const ScenarioConfig square_config = shipped("square_all_dirichlet.json");
  check.require(square_config.solver.h0 == 0.1 && square_config.solver.levels == 4,
                "square study must run 4 levels from h0 = 0.1");
  const SolveReport square_full = run_solve(square_config);
  check.close(square_full.extrapolation.lambda_inf, 2 * kPi * kPi, 1e-3,
              "square all-Dirichlet lambda");

  const SolveReport square_side = run_solve(shipped("square_one_side.json"));
  check.close(square_side.extrapolation.lambda_inf, kPi * kPi / 4, 1e-3,
              "one-side square lambda");

  const SolveReport rect = run_solve(shipped("rectangle_left_dirichlet.json"));
  check.close(rect.extrapolation.lambda_inf, kPi * kPi / 16, 2e-3, "rectangle lambda");

  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  check.require(seconds <= 60.0, "oracle studies exceeded 60 s");
}

void criterion2(Check& check) {
  double worst_seconds = 0.0;
  int obtuse_runs = 0, right_runs = 0;
  for (const char* file : {"obtuse_sweep_S.json", "obtuse_sweep_M.json"}) {
    const ScenarioConfig config = shipped(file);
    for (double value : config.sweep->values) {
      ComparisonReport report;
      worst_seconds = std::max(worst_seconds,
                               timed_compare(sweep_point_config(config, value), report));
      check.require(report.verdict == Verdict::VerifiedStrict,
                    file + std::string(" value ") + std::to_string(value) + " not strict");
      ++obtuse_runs;
    }
  }
  for (const char* file : {"right_sweep_S.json", "right_sweep_M.json"}) {
    const ScenarioConfig config = shipped(file);
    for (double value : config.sweep->values) {
      ComparisonReport report;
      worst_seconds = std::max(worst_seconds,
                               timed_compare(sweep_point_config(config, value), report));
      check.require(report.verdict == Verdict::VerifiedStrict,
                    file + std::string(" value ") + std::to_string(value) + " not strict");
      ++right_runs;
    }
  }
  check.require(obtuse_runs >= 18, "needs >= 9 obtuse triangles for both comparisons");
  check.require(right_runs >= 6, "needs >= 3 right triangles for both comparisons");
  check.require(worst_seconds <= 90.0, "a comparison run exceeded 90 s");
}

void criterion3(Check& check) {
  const ScenarioConfig config = shipped("trapezium_sweep.json");
  check.require(config.sweep->values.size() >= 5, "needs >= 5 base ratios");
  const auto points = run_sweep(config);
  for (const SweepPoint& p : points) {
    check.require(p.report.has_value(), "trapezium point failed: " + p.status);
    if (!p.report) continue;
    check.require(p.report->verdict == Verdict::VerifiedStrict,
                  "ratio " + std::to_string(p.value) + " not strict");
    check.require(p.report->hypothesis.classification == Classification::Theorem34,
                  "ratio " + std::to_string(p.value) + " not classified by the sufficient test");
  }
}

void criterion4(Check& check) {
  const ComparisonReport report = compare(shipped("bulge_compare.json"));
  check.require(report.hypothesis.classification == Classification::Theorem31,
                "curved complementary domain must classify as the complementary theorem");
  check.require(report.verdict == Verdict::VerifiedStrict, "curved domain not strict");
}

void criterion5(Check& check) {
  const ComparisonReport report = compare(shipped("rectangle_symmetric.json"));
  check.require(report.verdict == Verdict::EqualWithinTol,
                "rectangle verdict " + to_string(report.verdict));
  for (std::size_t k = 0; k < report.gamma.levels.size(); ++k) {
    const double diff =
        std::abs(report.gamma.levels[k].lambda - report.gamma_prime.levels[k].lambda);
    check.require(diff <= 3.0 * report.combined_error,
                  "level " + std::to_string(k) + " margin above the error bound");
  }
}

void criterion6(Check& check) {
  for (double delta : {0.01, 0.05, 0.1}) {
    const DomainBoundary quad = shapes::make_bent_quadrilateral(delta);
    const BoundaryPartition part = make_partition(quad, {3}, 0);
    const ConditionCheck cond = check_condition_3_1(monotonicity_profile(quad, part));
    check.require(!cond.pass, "condition must fail at delta " + std::to_string(delta));
    bool up_jump_at_bend = false;
    for (const MonotonicityViolation& v : cond.violations) {
      up_jump_at_bend |= v.kind == ViolationKind::CornerUpJump && v.index == 2;
    }
    check.require(up_jump_at_bend, "expected a corner up-jump at the bend corner");

    ScenarioConfig config;
    config.name = "bent_" + std::to_string(delta);
    config.domain = std::make_shared<DomainBoundary>(quad);
    config.gamma = {3};
    config.gamma_prime = 0;
    config.solver.h0 = 0.1;
    config.solver.levels = 3;
    config.solver.tol = 1e-9;
    const ComparisonReport report = compare(config);
    check.require(report.hypothesis.classification == Classification::None,
                  "bent quadrilateral must classify NONE");
    check.require(report.verdict == Verdict::VerifiedStrict,
                  "inequality must still verify at delta " + std::to_string(delta));
  }
}

void criterion7(Check& check) {
  const DomainBoundary square = shapes::make_unit_square();
  const ManufacturedFunction coscos = ManufacturedFunction::cosine_product(kPi / 2, kPi / 2);
  const IdentityBreakdown sq = identity_residual(square, coscos, 8, {0.05, 0.05});
  const double closed_form = std::pow(kPi / 2, 4) / 4.0;
  check.close(sq.term_mixed, closed_form, 1e-10, "square term_mixed");
  check.close(sq.term_cross, closed_form, 1e-10, "square term_cross");
  check.require(std::abs(sq.residual) < 1e-10, "square residual must be below 1e-10");

  const DomainBoundary disk = shapes::make_disk(1.0);
  const ManufacturedFunction paraboloid =
      ManufacturedFunction::polynomial({{1.0, 0.0, -1.0}, {0.0}, {-1.0}});
  const IdentityBreakdown dk = identity_residual(disk, paraboloid, 8, {0.002, 0.01});
  check.close(dk.term_mixed, 4 * kPi, 1e-6, "disk term_mixed");
  check.require(std::abs(dk.term_cross) <= 1e-6 * 4 * kPi, "disk term_cross not ~0");
  check.close(dk.term_curv, -8 * kPi, 1e-6, "disk term_curv");

  const ManufacturedFunction bubble =
      ManufacturedFunction({{1.0, Factor1D::poly({0, 1, -1}), Factor1D::poly({0, 1, -1})}});
  const IdentityBreakdown b1 = identity_residual(square, bubble, 8, {0.1, 0.1});
  check.require(std::abs(b1.residual) < 1e-9, "square bubble residual above 1e-9");
  const ManufacturedFunction ridge =
      ManufacturedFunction({{1.0, Factor1D::poly({0, 2, -1}), Factor1D::one()}});
  const IdentityBreakdown b2 =
      identity_residual(shapes::make_rectangle(2.0, 1.0), ridge, 6, {0.1, 0.1});
  check.require(std::abs(b2.residual) < 1e-9, "rectangle polynomial residual above 1e-9");
}

void criterion8(Check& check) {
  const DomainBoundary square = shapes::make_unit_square();
  const Mesh mesh = generate(square, 0.2);
  std::vector<double> lambda(16, 0.0);
  for (int mask = 1; mask < 16; ++mask) {
    std::set<std::size_t> dirichlet;
    for (int side = 0; side < 4; ++side) {
      if (mask & (1 << side)) dirichlet.insert(side);
    }
    const EigenResult r = solve_on_mesh(mesh, dirichlet);
    lambda[mask] = r.lambda;
    for (double v : r.vector) {
      check.require(v > 0.0, "ground state positivity violated");
    }
  }
  for (int sub = 1; sub < 16; ++sub) {
    for (int sup = 1; sup < 16; ++sup) {
      if ((sub & sup) != sub || sub == sup) continue;
      check.require(lambda[sub] <= lambda[sup] * (1.0 + 1e-8),
                    "monotonicity violated for masks " + std::to_string(sub) + " subset of " +
                        std::to_string(sup));
      check.require(lambda[sup] > lambda[sub] + 1e-6,
                    "adding a full side must strictly increase lambda (masks " +
                        std::to_string(sub) + " -> " + std::to_string(sup) + ")");
    }
  }
}

void criterion9(Check& check) {
  // Frame and curvature consistency by finite differences.
  const double eps = 1e-5;
  const DomainBoundary domains[] = {shapes::make_disk(1.3), shapes::make_bulge_domain(1.0, 2.0),
                                    shapes::make_unit_square()};
  for (const DomainBoundary& boundary : domains) {
    for (const BoundaryArc& arc : boundary.arcs()) {
      for (int k = 1; k < 12; ++k) {
        const double s = arc.length() * k / 12.0;
        if (s - eps < 0.0 || s + eps > arc.length()) continue;
        const UnitFrame f = arc.frame_at(s);
        check.require(std::abs(norm(f.tau) - 1.0) < 1e-12, "tau not unit");
        check.require(std::abs(f.nu.x - f.tau.y) < 1e-14 &&
                          std::abs(f.nu.y + f.tau.x) < 1e-14,
                      "nu is not rotate(tau, -pi/2)");
        const Vec2 dtau = (arc.frame_at(s + eps).tau - arc.frame_at(s - eps).tau) / (2 * eps);
        const double kappa = arc.curvature_at(s);
        check.require(std::abs(dot(dtau, f.nu) - kappa) <= 1e-6 * (std::abs(kappa) + 1.0),
                      "finite-difference curvature mismatch");
      }
    }
  }

  // Dense-oracle equivalence on small systems (<= 300 DOFs).
  struct OracleCase {
    DomainBoundary domain;
    std::set<std::size_t> dirichlet;
  };
  const OracleCase cases[] = {{shapes::make_unit_square(), {0}},
                              {shapes::make_triangle({0, 0}, {2, 0}, {0, 1}), {1}},
                              {shapes::make_disk(1.0), {0, 1}}};
  for (const OracleCase& c : cases) {
    const Mesh mesh = generate(c.domain, 0.35);
    const AssembledSystem sys = assemble(mesh, c.dirichlet);
    check.require(sys.stiffness.dimension() <= 300, "oracle mesh too large");
    const EigenResult ours = solve_smallest(sys.stiffness, sys.mass);
    const double reference = dense_smallest_reference(sys.stiffness, sys.mass);
    check.close(ours.lambda, reference, 1e-9, "dense oracle eigenvalue");
    for (double v : ours.vector) check.require(v > 0.0, "oracle case ground state not positive");
  }

  // Exact scaling law on mapped meshes.
  for (const DomainBoundary& boundary :
       {shapes::make_acute_trapezium(0.5, 0.35), shapes::make_unit_square()}) {
    const Mesh mesh = generate(boundary, 0.2);
    Mesh scaled = mesh;
    for (Point2& p : scaled.vertices) p = p * 2.0;
    scaled.h *= 2.0;
    const double a = solve_on_mesh(mesh, {0}).lambda;
    const double b = solve_on_mesh(scaled, {0}).lambda;
    check.close(b * 4.0, a, 1e-12, "scaling law");
  }
}

// CLI coverage: every built-in scenario runs via a single invocation.
void cli_coverage(Check& check) {
  if (g_cli_path.empty()) {
    check.require(false, "CLI path not provided (--cli)");
    return;
  }
  struct Invocation {
    std::string subcommand, config, extra;
    int expected_exit;
  };
  const std::vector<Invocation> runs = {
      {"compare", "right_triangle_L_vs_S.json", "--expect THEOREM_3_4,VERIFIED_STRICT", 0},
      {"compare", "rectangle_symmetric.json", "--expect EQUAL_WITHIN_TOL", 0},
      {"compare", "bulge_compare.json", "--expect THEOREM_3_1,VERIFIED_STRICT", 0},
      {"compare", "bent_quadrilateral_compare.json", "--expect NONE,VERIFIED_STRICT", 0},
      {"compare", "right_triangle_L_vs_S.json", "--expect EQUAL_WITHIN_TOL", 2},
      {"check", "equilateral_check.json", "--expect NONE", 0},
      {"solve", "square_one_side.json", "", 0},
      {"sweep", "right_sweep_S.json", "--expect VERIFIED_STRICT", 0},
      {"identity", "square_identity_coscos.json", "", 0},
      {"identity", "disk_identity_paraboloid.json", "", 0},
      {"inclusion", "square_inclusion.json", "--expect VERIFIED_STRICT", 0},
      {"compare", "right_triangle_L_vs_S.json", "--format svg", 0},
      {"sweep", "trapezium_sweep.json", "--format csv", 0},
      {"compare", "no_such_config.json", "", 1},
  };
  for (const Invocation& run : runs) {
    std::string cmd = "\"" + g_cli_path + "\" " + run.subcommand + " --config \"" +
                      g_config_dir + "/" + run.config + "\" --out \"" + g_out_dir + "\" " +
                      run.extra + " > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    const int exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    check.require(exit_code == run.expected_exit,
                  run.subcommand + " " + run.config + " exited " + std::to_string(exit_code) +
                      " (wanted " + std::to_string(run.expected_exit) + ")");
  }
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i + 1 < argc; i += 2) {
    const std::string flag = argv[i];
    if (flag == "--cli") g_cli_path = argv[i + 1];
    else if (flag == "--configs") g_config_dir = argv[i + 1];
    else if (flag == "--out") g_out_dir = argv[i + 1];
  }
  if (g_config_dir.empty()) {
    std::fprintf(stderr, "usage: acceptance_suite --configs <dir> [--cli <path>] [--out <dir>]\n");
    return 64;
  }

  run_criterion(1, "analytic eigenvalue oracles (square, one-side square, rectangle)",
                criterion1);
  run_criterion(2, "obtuse and right triangles: S vs L and M vs L verified strict", criterion2);
  run_criterion(3, "acute trapezium family: S vs L verified strict", criterion3);
  run_criterion(4, "curved complementary domain classified and verified", criterion4);
  run_criterion(5, "rectangle symmetry: equal within tolerance at every level", criterion5);
  run_criterion(6, "bent quadrilateral family: condition fails, inequality holds", criterion6);
  run_criterion(7, "curvature integral identity on square, disk, and polygons", criterion7);
  run_criterion(8, "discrete monotonicity over all Dirichlet side subsets", criterion8);
  run_criterion(9, "property suites: dense oracle, scaling, positivity, frames", criterion9);
  run_criterion(10, "CLI runs every built-in scenario from shipped configs", cli_coverage);

  if (g_failures == 0) {
    std::printf("acceptance: all criteria passed\n");
  } else {
    std::printf("acceptance: %d criteria FAILED\n", g_failures);
  }
  return g_failures;
}
