#include "zaremba/hypotheses.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace zaremba {

namespace {
constexpr double kPi = std::numbers::pi;

double profile_value(Vec2 b, const UnitFrame& f) { return dot(b, f.tau) * dot(b, f.nu); }

double profile_derivative(Vec2 b, const UnitFrame& f, double kappa) {
  const double bt = dot(b, f.tau), bn = dot(b, f.nu);
  // d/ds [(b.tau)(b.nu)] with tau' = kappa nu and nu' = -kappa tau.
  return kappa * (bn * bn - bt * bt);
}
}  // namespace

Vec2 normal_of_gamma_prime(const DomainBoundary& boundary, std::size_t gamma_prime_arc) {
  const BoundaryArc& arc = boundary.arc(gamma_prime_arc);
  if (!arc.is_segment()) {
    throw std::invalid_argument("gamma_prime must be a straight segment arc");
  }
  return arc.frame_at(0.0).nu;
}

BoundaryPartition make_partition(const DomainBoundary& boundary,
                                 std::vector<std::size_t> gamma,
                                 std::size_t gamma_prime) {
  const std::size_t n = boundary.arc_count();
  if (gamma.empty()) throw std::invalid_argument("gamma must be non-empty");
  if (gamma_prime >= n) throw std::invalid_argument("gamma_prime arc id out of range");
  for (std::size_t id : gamma) {
    if (id >= n) throw std::invalid_argument("gamma arc id out of range");
    if (id == gamma_prime) throw std::invalid_argument("gamma and gamma_prime must be disjoint");
  }
  if (gamma.size() >= n) throw std::invalid_argument("gamma cannot cover the whole boundary");

  std::vector<bool> in_gamma(n, false);
  for (std::size_t id : gamma) {
    if (in_gamma[id]) throw std::invalid_argument("duplicate arc id in gamma");
    in_gamma[id] = true;
  }

  // Gamma must be one contiguous run in the cyclic arc order.
  std::size_t runs = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (in_gamma[i] && !in_gamma[(i + n - 1) % n]) ++runs;
  }
  if (runs != 1) {
    throw std::invalid_argument("gamma must be connected along the boundary");
  }

  // Order gamma along positive orientation and collect the remainder starting
  // right after gamma's last arc.
  std::size_t first = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (in_gamma[i] && !in_gamma[(i + n - 1) % n]) first = i;
  }
  BoundaryPartition part;
  part.gamma.clear();
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t id = (first + k) % n;
    if (in_gamma[id]) part.gamma.push_back(id);
    else break;
  }
  if (part.gamma.size() != gamma.size()) {
    throw std::invalid_argument("gamma must be connected along the boundary");
  }
  for (std::size_t k = part.gamma.size(); k < n; ++k) {
    part.remainder.push_back((first + k) % n);
  }
  part.gamma_prime = gamma_prime;
  if (std::find(part.remainder.begin(), part.remainder.end(), gamma_prime) ==
      part.remainder.end()) {
    throw std::invalid_argument("gamma_prime must lie outside gamma");
  }
  part.b = normal_of_gamma_prime(boundary, gamma_prime);

  // P_j = corner between Sigma_j and Sigma_{j+1}; P_0 is the corner at the
  // start of Sigma_1 (the end point of Gamma) and P_N the start of Gamma.
  part.p_corners.push_back(part.remainder.front());
  for (std::size_t j = 1; j < part.remainder.size(); ++j) {
    part.p_corners.push_back(part.remainder[j]);
  }
  part.p_corners.push_back(part.gamma.front());
  return part;
}

MonotonicityProfile monotonicity_profile(const DomainBoundary& boundary,
                                         const BoundaryPartition& partition,
                                         int samples_per_arc) {
  if (samples_per_arc < 2) throw std::invalid_argument("samples_per_arc must be >= 2");
  MonotonicityProfile profile;
  profile.b = partition.b;
  const Vec2 b = partition.b;

  for (std::size_t id : partition.remainder) {
    const BoundaryArc& arc = boundary.arc(id);
    ArcProfile ap;
    ap.arc_id = id;
    ap.is_gamma_prime = id == partition.gamma_prime;
    if (arc.is_segment()) {
      // Constant frame: evaluate once so segment profiles carry exactly zero
      // sample-to-sample variation. On Gamma' the value is exactly 0 because
      // b = nu there and b.tau == nu.tau == 0 in floating point.
      const UnitFrame f = arc.frame_at(0.0);
      const double value = profile_value(b, f);
      for (int k = 0; k < samples_per_arc; ++k) {
        ap.s.push_back(arc.length() * k / (samples_per_arc - 1));
        ap.value.push_back(value);
        ap.derivative.push_back(0.0);
      }
    } else {
      for (int k = 0; k < samples_per_arc; ++k) {
        const double s = arc.length() * k / (samples_per_arc - 1);
        const UnitFrame f = arc.frame_at(s);
        ap.s.push_back(s);
        ap.value.push_back(profile_value(b, f));
        ap.derivative.push_back(profile_derivative(b, f, arc.curvature_at(s)));
      }
    }
    profile.arcs.push_back(std::move(ap));
  }

  // One-sided limits at interior corners P_1..P_{N-1}, taken from the exact
  // end frames of the adjacent arcs, not from the nearest samples.
  for (std::size_t j = 0; j + 1 < partition.remainder.size(); ++j) {
    const BoundaryArc& left_arc = boundary.arc(partition.remainder[j]);
    const BoundaryArc& right_arc = boundary.arc(partition.remainder[j + 1]);
    CornerLimits cl;
    cl.corner_id = partition.remainder[j + 1];  // corner at start of Sigma_{j+2}
    cl.left = profile_value(b, left_arc.frame_at(left_arc.length()));
    cl.right = profile_value(b, right_arc.frame_at(0.0));
    profile.corners.push_back(cl);
  }
  return profile;
}

ConditionCheck check_condition_3_1(const MonotonicityProfile& profile, double tol_mono) {
  ConditionCheck check;
  check.pass = true;

  for (const ArcProfile& ap : profile.arcs) {
    double worst = -std::numeric_limits<double>::infinity();
    double worst_s = 0.0;
    for (std::size_t k = 0; k < ap.s.size(); ++k) {
      if (ap.derivative[k] > worst) {
        worst = ap.derivative[k];
        worst_s = ap.s[k];
      }
      // Finite-difference fallback over the stored samples.
      if (k > 0 && k + 1 < ap.s.size()) {
        const double ds = ap.s[k + 1] - ap.s[k - 1];
        if (ds > 0.0) {
          const double fd = (ap.value[k + 1] - ap.value[k - 1]) / ds;
          check.fd_agreement = std::max(check.fd_agreement, std::abs(fd - ap.derivative[k]));
        }
      }
    }
    if (worst > tol_mono) {
      check.pass = false;
      check.violations.push_back(
          {ViolationKind::InteriorIncrease, ap.arc_id, worst_s, worst});
    }
  }

  for (const CornerLimits& cl : profile.corners) {
    if (cl.left < cl.right - tol_mono) {
      check.pass = false;
      check.violations.push_back(
          {ViolationKind::CornerUpJump, cl.corner_id, 0.0, cl.right - cl.left});
    }
  }
  return check;
}

std::string to_string(Classification c) {
  switch (c) {
    case Classification::Theorem31: return "THEOREM_3_1";
    case Classification::Theorem34: return "THEOREM_3_4";
    case Classification::None: return "NONE";
  }
  return "NONE";
}

HypothesisReport check_hypotheses(const DomainBoundary& boundary,
                                  const BoundaryPartition& partition,
                                  const HypothesisOptions& opts) {
  HypothesisReport report;
  report.complementary = partition.complementary();
  report.gamma_connected = true;  // enforced by make_partition

  // P_0 is the corner at the start of the first remainder arc; P_N at the
  // start of Gamma's first arc.
  const std::size_t p0 = partition.remainder.front();
  const std::size_t pn = partition.gamma.front();
  report.angle_check.angle_at_p0 = boundary.interior_angles()[p0];
  report.angle_check.angle_at_pn = boundary.interior_angles()[pn];
  report.angle_check.margin = std::min(kPi / 2 - report.angle_check.angle_at_p0,
                                       kPi / 2 - report.angle_check.angle_at_pn);
  report.angle_check.pass = report.angle_check.margin > opts.tol_angle;

  const MonotonicityProfile profile =
      monotonicity_profile(boundary, partition, opts.samples_per_arc);
  report.condition_3_1 = check_condition_3_1(profile, opts.tol_mono);

  if (report.complementary && report.angle_check.pass) {
    report.classification = Classification::Theorem31;
  } else if (!report.complementary && report.angle_check.pass &&
             report.condition_3_1.pass && report.gamma_connected) {
    report.classification = Classification::Theorem34;
  } else {
    report.classification = Classification::None;
  }
  return report;
}

}  // namespace zaremba
