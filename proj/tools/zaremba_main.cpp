#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "zaremba/hypotheses.hpp"
#include "zaremba/mesh.hpp"
#include "zaremba/report.hpp"
#include "zaremba/scenario.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_dir = ".";
  std::string format = "json";
  std::string expect;
  std::string grading;  // "on" | "off" | ""
  std::string dump_mesh;
  double h0 = 0.0;
  int levels = 0;
  double tol = 0.0;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "Scenario config (JSON)")->required();
  cmd->add_option("--out", args.out_dir, "Output directory");
  cmd->add_option("--format", args.format, "Report format")
      ->check(CLI::IsMember({"json", "csv", "svg"}));
  cmd->add_option("--expect", args.expect,
                  "Comma-separated verdict/classification tokens; exit 2 on mismatch");
  cmd->add_option("--h0", args.h0, "Override base mesh size");
  cmd->add_option("--levels", args.levels, "Override refinement level count");
  cmd->add_option("--tol", args.tol, "Override eigensolver tolerance");
  cmd->add_option("--grading", args.grading, "Override transition-corner grading")
      ->check(CLI::IsMember({"on", "off"}));
}

zaremba::ScenarioConfig load(const CommonArgs& args) {
  zaremba::ScenarioConfig config = zaremba::load_config_file(args.config_path);
  if (args.h0 > 0.0) config.solver.h0 = args.h0;
  if (args.levels > 0) config.solver.levels = args.levels;
  if (args.tol > 0.0) config.solver.tol = args.tol;
  if (args.grading == "on") config.solver.grading = true;
  if (args.grading == "off") config.solver.grading = false;
  return config;
}

std::vector<std::string> split_tokens(const std::string& list) {
  std::vector<std::string> tokens;
  std::string cur;
  for (char c : list) {
    if (c == ',') {
      if (!cur.empty()) tokens.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) tokens.push_back(cur);
  return tokens;
}

// Exit code 2 when a requested token is not among the report's
// classification/verdict strings.
int check_expectations(const std::string& expect, const std::vector<std::string>& actual) {
  for (const std::string& token : split_tokens(expect)) {
    bool found = false;
    for (const std::string& a : actual) found |= a == token;
    if (!found) {
      std::fprintf(stderr, "expectation mismatch: wanted %s, got", token.c_str());
      for (const std::string& a : actual) std::fprintf(stderr, " %s", a.c_str());
      std::fprintf(stderr, "\n");
      return 2;
    }
  }
  return 0;
}

void print_files(const std::vector<std::string>& files) {
  for (const std::string& f : files) std::printf("wrote %s\n", f.c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mixed Dirichlet-Neumann eigenvalue comparisons on convex planar domains"};
  app.require_subcommand(1);

  CommonArgs args;
  CLI::App* cmd_check = app.add_subcommand("check", "Evaluate the geometric hypotheses");
  CLI::App* cmd_solve = app.add_subcommand("solve", "Eigenvalue refinement study for one set");
  cmd_solve->add_option("--dump-mesh", args.dump_mesh,
                        "Write the base-level mesh as a plain-text node/element file");
  CLI::App* cmd_compare = app.add_subcommand("compare", "Compare lambda(gamma) vs lambda(gamma')");
  CLI::App* cmd_sweep = app.add_subcommand("sweep", "Run a comparison family over a grid");
  CLI::App* cmd_identity = app.add_subcommand("identity", "Verify the curvature integral identity");
  CLI::App* cmd_inclusion = app.add_subcommand("inclusion", "Dirichlet-set inclusion monotonicity");
  for (CLI::App* cmd : {cmd_check, cmd_solve, cmd_compare, cmd_sweep, cmd_identity,
                        cmd_inclusion}) {
    add_common(cmd, args);
  }

  CLI11_PARSE(app, argc, argv);

  try {
    const zaremba::ScenarioConfig config = load(args);

    if (cmd_check->parsed()) {
      const zaremba::BoundaryPartition partition =
          zaremba::make_partition(*config.domain, config.gamma, config.gamma_prime);
      const zaremba::HypothesisReport report =
          zaremba::check_hypotheses(*config.domain, partition);
      print_files(zaremba::emit_hypothesis_report(report, config.name, args.out_dir, args.format));
      std::printf("classification %s\n", zaremba::to_string(report.classification).c_str());
      return check_expectations(args.expect, {zaremba::to_string(report.classification)});
    }

    if (cmd_solve->parsed()) {
      if (!args.dump_mesh.empty()) {
        const zaremba::Mesh mesh = zaremba::generate(*config.domain, config.solver.h0);
        std::ofstream out(args.dump_mesh);
        if (!out) throw std::runtime_error("cannot write '" + args.dump_mesh + "'");
        out << zaremba::mesh_to_text(mesh);
        std::printf("wrote %s\n", args.dump_mesh.c_str());
      }
      const zaremba::SolveReport report = zaremba::run_solve(config);
      print_files(zaremba::emit_report(report, args.out_dir, args.format));
      std::printf("lambda_inf %.12g (error estimate %.3g)\n", report.extrapolation.lambda_inf,
                  report.extrapolation.error_estimate);
      return 0;
    }

    if (cmd_compare->parsed()) {
      const zaremba::ComparisonReport report = zaremba::compare(config);
      print_files(zaremba::emit_report(report, args.out_dir, args.format));
      std::printf("classification %s, margin %.6g, combined error %.3g, verdict %s\n",
                  zaremba::to_string(report.hypothesis.classification).c_str(), report.margin,
                  report.combined_error, zaremba::to_string(report.verdict).c_str());
      return check_expectations(args.expect,
                                {zaremba::to_string(report.hypothesis.classification),
                                 zaremba::to_string(report.verdict)});
    }

    if (cmd_sweep->parsed()) {
      const std::vector<zaremba::SweepPoint> points = zaremba::run_sweep(config);
      print_files(zaremba::emit_report(points, config.name, args.out_dir, args.format));
      int failures = 0;
      for (const zaremba::SweepPoint& p : points) {
        if (p.report) {
          std::printf("point %zu (value %.6g): %s\n", p.index, p.value,
                      zaremba::to_string(p.report->verdict).c_str());
        } else {
          ++failures;
          std::printf("point %zu (value %.6g): %s\n", p.index, p.value, p.status.c_str());
        }
      }
      if (failures == static_cast<int>(points.size())) return 1;
      // Every token must hold at every successful grid point.
      for (const zaremba::SweepPoint& p : points) {
        if (!p.report) continue;
        const int rc = check_expectations(
            args.expect, {zaremba::to_string(p.report->hypothesis.classification),
                          zaremba::to_string(p.report->verdict)});
        if (rc != 0) return rc;
      }
      return 0;
    }

    if (cmd_identity->parsed()) {
      const zaremba::IdentityReport report = zaremba::run_identity(config);
      print_files(zaremba::emit_report(report, args.out_dir, args.format));
      std::printf("residual %.6g (mixed %.6g, cross %.6g, curv %.6g)\n",
                  report.breakdown.residual, report.breakdown.term_mixed,
                  report.breakdown.term_cross, report.breakdown.term_curv);
      return 0;
    }

    if (cmd_inclusion->parsed()) {
      const zaremba::InclusionReport report = zaremba::run_inclusion(config);
      print_files(zaremba::emit_report(report, args.out_dir, args.format));
      std::printf("levels monotone: %s, margin %.6g, verdict %s\n",
                  report.all_levels_monotone ? "yes" : "no", report.margin,
                  zaremba::to_string(report.verdict).c_str());
      return check_expectations(args.expect, {zaremba::to_string(report.verdict)});
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
