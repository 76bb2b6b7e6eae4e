#include "zaremba/scenario.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "zaremba/mesh.hpp"
#include "zaremba/shapes.hpp"

namespace zaremba {

namespace {

using nlohmann::json;
constexpr double kPi = std::numbers::pi;

Point2 parse_point(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2) {
    throw std::invalid_argument(std::string(what) + " must be a [x, y] pair");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

BoundaryArc parse_arc(const json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "segment") {
    return BoundaryArc(Segment{parse_point(j.at("start"), "segment start"),
                               parse_point(j.at("end"), "segment end")});
  }
  if (type == "circular") {
    CircularArc arc;
    arc.center = parse_point(j.at("center"), "arc center");
    arc.radius = j.at("radius").get<double>();
    arc.angle_start = j.at("angle_start").get<double>();
    arc.angle_end = j.at("angle_end").get<double>();
    return BoundaryArc(arc);
  }
  if (type == "graph") {
    GraphArc arc;
    arc.coefficients = j.at("coefficients").get<std::vector<double>>();
    arc.t_lo = j.at("t_lo").get<double>();
    arc.t_hi = j.at("t_hi").get<double>();
    arc.rotation = j.value("rotation", 0.0);
    if (j.contains("translation")) {
      arc.translation = parse_point(j.at("translation"), "graph translation");
    }
    arc.reversed = j.value("reversed", false);
    return BoundaryArc(arc);
  }
  throw std::invalid_argument("unknown arc type '" + type + "'");
}

Factor1D parse_factor(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "poly") return Factor1D::poly(j.at("coeffs").get<std::vector<double>>());
  if (kind == "sin") return Factor1D::sin(j.at("freq").get<double>(), j.value("phase", 0.0));
  if (kind == "cos") return Factor1D::cos(j.at("freq").get<double>(), j.value("phase", 0.0));
  throw std::invalid_argument("unknown factor kind '" + kind + "'");
}

ManufacturedFunction parse_function(const json& j) {
  if (j.contains("cos_product")) {
    const auto& k = j.at("cos_product");
    return ManufacturedFunction::cosine_product(k.at(0).get<double>(), k.at(1).get<double>());
  }
  if (j.contains("polynomial")) {
    return ManufacturedFunction::polynomial(
        j.at("polynomial").get<std::vector<std::vector<double>>>());
  }
  if (j.contains("terms")) {
    std::vector<SeparableTerm> terms;
    for (const json& t : j.at("terms")) {
      terms.push_back(
          {t.value("coef", 1.0), parse_factor(t.at("fx")), parse_factor(t.at("fy"))});
    }
    return ManufacturedFunction(std::move(terms));
  }
  throw std::invalid_argument("identity function needs cos_product, polynomial, or terms");
}

ScenarioKind parse_kind(const std::string& s) {
  if (s == "check") return ScenarioKind::Check;
  if (s == "solve") return ScenarioKind::Solve;
  if (s == "compare") return ScenarioKind::Compare;
  if (s == "sweep") return ScenarioKind::Sweep;
  if (s == "identity") return ScenarioKind::Identity;
  if (s == "inclusion") return ScenarioKind::Inclusion;
  throw std::invalid_argument("unknown scenario kind '" + s + "'");
}

int thread_cap() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("ZAREMBA_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(v));
  }
  return static_cast<int>(n);
}

void require_validated(const DomainBoundary& boundary) {
  const ValidationReport report = validate(boundary);
  if (!report.accepted) {
    std::string msg = "boundary rejected:";
    for (const auto& issue : report.issues) msg += " " + issue.message + ";";
    throw std::invalid_argument(msg);
  }
}

// Eigenvalue study for several Dirichlet sets on one shared mesh family.
std::vector<std::vector<LevelResult>> shared_mesh_study(
    const DomainBoundary& boundary, const std::vector<std::set<std::size_t>>& dirichlet_sets,
    const SolverParams& solver, const std::optional<GradingSpec>& grading) {
  std::vector<std::vector<LevelResult>> out(dirichlet_sets.size());
  Mesh mesh = generate(boundary, solver.h0, grading);
  for (int level = 0; level < solver.levels; ++level) {
    if (level > 0) mesh = refine(mesh, boundary);
    for (std::size_t s = 0; s < dirichlet_sets.size(); ++s) {
      SolveOptions opts;
      opts.tol = solver.tol;
      const EigenResult r = solve_on_mesh(mesh, dirichlet_sets[s], opts);
      out[s].push_back({r.h, r.lambda, r.n_dofs, r.residual});
    }
  }
  return out;
}

Extrapolation extrapolate_levels(const std::vector<LevelResult>& levels) {
  std::vector<EigenResult> results;
  for (const LevelResult& l : levels) {
    EigenResult r;
    r.lambda = l.lambda;
    r.h = l.h;
    results.push_back(r);
  }
  return extrapolate(results);
}

Verdict decide(double margin, double combined_error, bool symmetric_pair) {
  if (margin > 3.0 * combined_error) return Verdict::VerifiedStrict;
  if (std::abs(margin) <= 3.0 * combined_error && symmetric_pair) {
    return Verdict::EqualWithinTol;
  }
  return Verdict::Inconclusive;
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::VerifiedStrict: return "VERIFIED_STRICT";
    case Verdict::EqualWithinTol: return "EQUAL_WITHIN_TOL";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

std::string to_string(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::Check: return "check";
    case ScenarioKind::Solve: return "solve";
    case ScenarioKind::Compare: return "compare";
    case ScenarioKind::Sweep: return "sweep";
    case ScenarioKind::Identity: return "identity";
    case ScenarioKind::Inclusion: return "inclusion";
  }
  return "compare";
}

ScenarioConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
  }

  ScenarioConfig config;
  config.name = j.value("name", "scenario");
  config.kind = parse_kind(j.value("kind", "compare"));

  if (j.contains("domain")) {
    std::vector<BoundaryArc> arcs;
    for (const json& a : j.at("domain").at("arcs")) arcs.push_back(parse_arc(a));
    config.domain = std::make_shared<DomainBoundary>(std::move(arcs));
  }

  if (j.contains("partition")) {
    const json& p = j.at("partition");
    config.gamma = p.value("gamma", std::vector<std::size_t>{});
    config.gamma_prime = p.value("gamma_prime", std::size_t{0});
  }

  if (j.contains("solver")) {
    const json& s = j.at("solver");
    config.solver.h0 = s.value("h0", config.solver.h0);
    config.solver.levels = s.value("levels", config.solver.levels);
    config.solver.tol = s.value("tol", config.solver.tol);
    config.solver.grading = s.value("grading", config.solver.grading);
    if (!(config.solver.h0 > 0.0) || config.solver.levels < 1 || !(config.solver.tol > 0.0)) {
      throw std::invalid_argument("solver parameters must be positive");
    }
  }
  config.expect_equal = j.value("expect_equal", false);

  if (j.contains("sweep")) {
    const json& s = j.at("sweep");
    SweepSpec spec;
    spec.family = s.at("family").get<std::string>();
    spec.values = s.at("values").get<std::vector<double>>();
    spec.gamma_prime = s.value("gamma_prime", "S");
    spec.height = s.value("height", 0.35);
    if (spec.values.empty()) throw std::invalid_argument("sweep grid must be non-empty");
    config.sweep = std::move(spec);
  }

  if (j.contains("identity")) {
    const json& s = j.at("identity");
    IdentitySpec spec;
    spec.function = parse_function(s.at("function"));
    for (const json& l : s.at("labels")) {
      const std::string label = l.get<std::string>();
      if (label == "dirichlet") spec.labels.push_back(BCLabel::Dirichlet);
      else if (label == "neumann") spec.labels.push_back(BCLabel::Neumann);
      else throw std::invalid_argument("labels must be 'dirichlet' or 'neumann'");
    }
    spec.quad_order = s.value("quad_order", 8);
    spec.quad.domain_h = s.value("domain_h", spec.quad.domain_h);
    spec.quad.boundary_h = s.value("boundary_h", spec.quad.boundary_h);
    config.identity = std::move(spec);
  }

  if (j.contains("inclusion")) {
    const json& s = j.at("inclusion");
    InclusionSpec spec;
    spec.gamma = s.at("gamma").get<std::vector<std::size_t>>();
    spec.gamma_sub = s.at("gamma_sub").get<std::vector<std::size_t>>();
    config.inclusion = std::move(spec);
  }

  return config;
}

ScenarioConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::vector<std::size_t> transition_grading_corners(const DomainBoundary& boundary,
                                                    const std::vector<std::size_t>& dirichlet) {
  const std::size_t n = boundary.arc_count();
  std::vector<bool> in_set(n, false);
  for (std::size_t id : dirichlet) in_set.at(id) = true;
  std::vector<std::size_t> corners;
  for (std::size_t c = 0; c < n; ++c) {
    const bool out_arc = in_set[c];                  // arc starting at corner c
    const bool in_arc = in_set[(c + n - 1) % n];     // arc ending at corner c
    if (out_arc != in_arc && boundary.interior_angles()[c] > kPi / 2 + 1e-9) {
      corners.push_back(c);
    }
  }
  return corners;
}

bool detect_symmetric_pair(const DomainBoundary& boundary, const BoundaryPartition& partition) {
  if (partition.gamma.size() != 1) return false;
  const BoundaryArc& g = boundary.arc(partition.gamma.front());
  const BoundaryArc& gp = boundary.arc(partition.gamma_prime);
  if (!g.is_segment() || !gp.is_segment()) return false;

  const double scale = std::max(g.length(), gp.length());
  if (std::abs(g.length() - gp.length()) > 1e-9 * scale) return false;
  const Vec2 tg = g.frame_at(0).tau, tgp = gp.frame_at(0).tau;
  if (std::abs(cross(tg, tgp)) > 1e-12) return false;

  // Reflection across the line halfway between the two midpoints.
  const Point2 m1 = g.point_at(0.5 * g.length());
  const Point2 m2 = gp.point_at(0.5 * gp.length());
  if (distance(m1, m2) < 1e-12) return false;
  const Vec2 axis_normal = normalized(m1 - m2);
  const Point2 center = (m1 + m2) / 2.0;
  auto mirrored = [&](Point2 p) { return p - axis_normal * (2.0 * dot(p - center, axis_normal)); };

  const double tol = 1e-9 * std::max(1.0, boundary.perimeter());
  for (const Point2& c : boundary.corners()) {
    const Point2 mc = mirrored(c);
    bool found = false;
    for (const Point2& other : boundary.corners()) found |= distance(mc, other) <= tol;
    if (!found) return false;
  }
  return true;
}

ComparisonReport compare(const ScenarioConfig& config) {
  if (!config.domain) throw std::invalid_argument("compare needs a domain");
  const DomainBoundary& boundary = *config.domain;
  require_validated(boundary);

  const BoundaryPartition partition =
      make_partition(boundary, config.gamma, config.gamma_prime);

  ComparisonReport report;
  report.name = config.name;
  report.hypothesis = check_hypotheses(boundary, partition);
  report.profile = monotonicity_profile(boundary, partition);
  report.symmetric_pair = config.expect_equal || detect_symmetric_pair(boundary, partition);

  std::optional<GradingSpec> grading;
  if (config.solver.grading) {
    std::set<std::size_t> corners;
    for (std::size_t c : transition_grading_corners(boundary, partition.gamma)) corners.insert(c);
    for (std::size_t c : transition_grading_corners(boundary, {partition.gamma_prime})) {
      corners.insert(c);
    }
    if (!corners.empty()) {
      GradingSpec spec;
      spec.corners.assign(corners.begin(), corners.end());
      grading = spec;
    }
  }

  const std::set<std::size_t> gamma_set(partition.gamma.begin(), partition.gamma.end());
  const std::set<std::size_t> gamma_prime_set{partition.gamma_prime};
  const auto studies =
      shared_mesh_study(boundary, {gamma_set, gamma_prime_set}, config.solver, grading);

  report.gamma.arc_ids = partition.gamma;
  report.gamma.levels = studies[0];
  report.gamma.extrapolation = extrapolate_levels(studies[0]);
  report.gamma_prime.arc_ids = {partition.gamma_prime};
  report.gamma_prime.levels = studies[1];
  report.gamma_prime.extrapolation = extrapolate_levels(studies[1]);

  report.margin =
      report.gamma.extrapolation.lambda_inf - report.gamma_prime.extrapolation.lambda_inf;
  report.combined_error = report.gamma.extrapolation.error_estimate +
                          report.gamma_prime.extrapolation.error_estimate;
  report.verdict = decide(report.margin, report.combined_error, report.symmetric_pair);
  return report;
}

ScenarioConfig sweep_point_config(const ScenarioConfig& config, double value) {
  if (!config.sweep) throw std::invalid_argument("sweep spec required");
  const SweepSpec& spec = *config.sweep;
  ScenarioConfig point = config;
  point.kind = ScenarioKind::Compare;
  point.sweep.reset();

  std::ostringstream name;
  name << config.name << "_" << spec.family << "_" << value;
  point.name = name.str();

  if (spec.family == "obtuse_triangle") {
    const double apex = value * kPi / 180.0;
    point.domain = std::make_shared<DomainBoundary>(shapes::make_obtuse_triangle(apex));
    point.gamma = {0};
    point.gamma_prime = spec.gamma_prime == "M" ? 1 : 2;
    // Thin apex: keep a few rows of elements across the triangle height.
    const double height = point.domain->corners()[2].y;
    point.solver.h0 = std::min(config.solver.h0, 0.45 * height);
  } else if (spec.family == "right_triangle") {
    // Legs along the axes with ratio value < 1; sides: 0 medium leg,
    // 1 hypotenuse, 2 short leg.
    if (!(value > 0.0 && value < 1.0)) {
      throw std::invalid_argument("right_triangle sweep values must lie in (0,1)");
    }
    point.domain = std::make_shared<DomainBoundary>(
        shapes::make_triangle({0, 0}, {1, 0}, {0, value}));
    point.gamma = {1};
    point.gamma_prime = spec.gamma_prime == "M" ? 0 : 2;
    point.solver.h0 = std::min(config.solver.h0, 0.45 * value);
  } else if (spec.family == "acute_trapezium") {
    point.domain = std::make_shared<DomainBoundary>(
        shapes::make_acute_trapezium(value, spec.height));
    point.gamma = {0};
    point.gamma_prime = 2;
  } else if (spec.family == "bent_quadrilateral") {
    point.domain = std::make_shared<DomainBoundary>(shapes::make_bent_quadrilateral(value));
    point.gamma = {3};
    point.gamma_prime = 0;
  } else {
    throw std::invalid_argument("unknown sweep family '" + spec.family + "'");
  }
  return point;
}

std::vector<SweepPoint> run_sweep(const ScenarioConfig& config) {
  if (!config.sweep) throw std::invalid_argument("sweep scenario needs a sweep block");
  const std::vector<double>& values = config.sweep->values;
  std::vector<SweepPoint> points(values.size());

  std::atomic<std::size_t> next{0};
  const int workers = std::min<int>(thread_cap(), static_cast<int>(values.size()));
  auto work = [&]() {
    for (std::size_t i = next.fetch_add(1); i < values.size(); i = next.fetch_add(1)) {
      SweepPoint& point = points[i];
      point.index = i;
      point.value = values[i];
      try {
        point.report = compare(sweep_point_config(config, values[i]));
      } catch (const std::exception& e) {
        point.status = std::string("error: ") + e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (std::thread& t : pool) t.join();
  return points;
}

InclusionReport run_inclusion(const ScenarioConfig& config) {
  if (!config.domain) throw std::invalid_argument("inclusion needs a domain");
  if (!config.inclusion) throw std::invalid_argument("inclusion scenario needs an inclusion block");
  const DomainBoundary& boundary = *config.domain;
  require_validated(boundary);

  const std::set<std::size_t> full(config.inclusion->gamma.begin(),
                                   config.inclusion->gamma.end());
  const std::set<std::size_t> sub(config.inclusion->gamma_sub.begin(),
                                  config.inclusion->gamma_sub.end());
  if (full.empty() || sub.empty()) {
    throw std::invalid_argument("inclusion sets must be non-empty");
  }
  if (!std::includes(full.begin(), full.end(), sub.begin(), sub.end())) {
    throw std::invalid_argument("gamma_sub must be a subset of gamma");
  }

  InclusionReport report;
  report.name = config.name;
  report.gamma.assign(full.begin(), full.end());
  report.gamma_sub.assign(sub.begin(), sub.end());
  report.proper_subset = sub.size() < full.size();

  const auto studies = shared_mesh_study(boundary, {full, sub}, config.solver, std::nullopt);
  report.all_levels_monotone = true;
  for (int level = 0; level < config.solver.levels; ++level) {
    InclusionLevel l;
    l.h = studies[0][level].h;
    l.lambda_full = studies[0][level].lambda;
    l.lambda_sub = studies[1][level].lambda;
    l.monotone = l.lambda_sub <= l.lambda_full * (1.0 + 10.0 * config.solver.tol);
    report.all_levels_monotone &= l.monotone;
    report.levels.push_back(l);
  }
  report.ex_full = extrapolate_levels(studies[0]);
  report.ex_sub = extrapolate_levels(studies[1]);
  report.margin = report.ex_full.lambda_inf - report.ex_sub.lambda_inf;
  report.combined_error = report.ex_full.error_estimate + report.ex_sub.error_estimate;

  if (!report.proper_subset) {
    report.verdict = Verdict::EqualWithinTol;
  } else {
    report.verdict = decide(report.margin, report.combined_error, false);
  }
  return report;
}

SolveReport run_solve(const ScenarioConfig& config) {
  if (!config.domain) throw std::invalid_argument("solve needs a domain");
  if (config.gamma.empty()) {
    throw std::invalid_argument("solve needs partition.gamma as the Dirichlet set");
  }
  const DomainBoundary& boundary = *config.domain;
  require_validated(boundary);

  std::optional<GradingSpec> grading;
  if (config.solver.grading) {
    const auto corners = transition_grading_corners(boundary, config.gamma);
    if (!corners.empty()) {
      GradingSpec spec;
      spec.corners = corners;
      grading = spec;
    }
  }
  const std::set<std::size_t> dirichlet(config.gamma.begin(), config.gamma.end());
  const auto studies = shared_mesh_study(boundary, {dirichlet}, config.solver, grading);

  SolveReport report;
  report.name = config.name;
  report.dirichlet_arcs = config.gamma;
  report.levels = studies[0];
  report.extrapolation = extrapolate_levels(studies[0]);
  return report;
}

IdentityReport run_identity(const ScenarioConfig& config) {
  if (!config.domain) throw std::invalid_argument("identity needs a domain");
  if (!config.identity || !config.identity->function) {
    throw std::invalid_argument("identity scenario needs an identity block");
  }
  const DomainBoundary& boundary = *config.domain;
  require_validated(boundary);
  const IdentitySpec& spec = *config.identity;

  IdentityReport report;
  report.name = config.name;
  report.quad_order = spec.quad_order;
  Point2 lo = boundary.corners()[0], hi = lo;
  for (const auto& s : boundary_samples(boundary, boundary.perimeter() / 64)) {
    lo.x = std::min(lo.x, s.point.x);
    lo.y = std::min(lo.y, s.point.y);
    hi.x = std::max(hi.x, s.point.x);
    hi.y = std::max(hi.y, s.point.y);
  }
  report.derivative_consistency = consistency_error(*spec.function, lo, hi);
  report.membership = check_v2_membership(boundary, spec.labels, *spec.function);
  report.breakdown = identity_residual(boundary, *spec.function, spec.quad_order, spec.quad);
  return report;
}

}  // namespace zaremba
