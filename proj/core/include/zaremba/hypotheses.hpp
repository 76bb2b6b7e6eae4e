#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "zaremba/geometry.hpp"

namespace zaremba {

/// Labeling of the boundary into the Dirichlet candidate Gamma (a contiguous
/// run of arcs), the competing straight segment Gamma' and the remaining arcs.
/// `remainder` lists Sigma_1..Sigma_N in positive orientation from the end
/// point P_0 of Gamma to its start point P_N; Gamma' appears among them.
struct BoundaryPartition {
  std::vector<std::size_t> gamma;
  std::size_t gamma_prime = 0;
  std::vector<std::size_t> remainder;
  Vec2 b{};  // outward unit normal of Gamma'

  /// Boundary corner ids P_0..P_N bounding the remainder arcs: p_corners[j]
  /// is P_j, i.e. the corner between Sigma_j and Sigma_{j+1}.
  std::vector<std::size_t> p_corners;

  bool complementary() const { return remainder.size() == 1; }
};

/// Outward unit normal of a straight boundary arc. Throws if the arc is not a
/// segment.
Vec2 normal_of_gamma_prime(const DomainBoundary& boundary, std::size_t gamma_prime_arc);

/// Validates the ids, orders the remainder in positive orientation and
/// computes b. Throws std::invalid_argument on: empty or non-contiguous
/// Gamma, Gamma' inside Gamma, or Gamma' not a segment.
BoundaryPartition make_partition(const DomainBoundary& boundary,
                                 std::vector<std::size_t> gamma,
                                 std::size_t gamma_prime);

/// Sampled values of t(s) = (b.tau)(b.nu) along one remainder arc, together
/// with the analytic tangential derivative at each sample.
struct ArcProfile {
  std::size_t arc_id = 0;
  bool is_gamma_prime = false;
  std::vector<double> s;           // arclength positions on the arc
  std::vector<double> value;       // t(s)
  std::vector<double> derivative;  // d/ds t(s) = kappa ((b.nu)^2 - (b.tau)^2)
};

/// One-sided limits of t at an interior corner P_j (j = 1..N-1) of the
/// remainder chain.
struct CornerLimits {
  std::size_t corner_id = 0;   // boundary corner index
  double left = 0.0;           // limit from Sigma_j
  double right = 0.0;          // limit from Sigma_{j+1}
};

struct MonotonicityProfile {
  Vec2 b{};
  std::vector<ArcProfile> arcs;       // Sigma_1..Sigma_N in order
  std::vector<CornerLimits> corners;  // P_1..P_{N-1}
};

MonotonicityProfile monotonicity_profile(const DomainBoundary& boundary,
                                         const BoundaryPartition& partition,
                                         int samples_per_arc = 256);

enum class ViolationKind { InteriorIncrease, CornerUpJump };

struct MonotonicityViolation {
  ViolationKind kind;
  std::size_t index = 0;   // arc id (interior) or boundary corner id (jump)
  double position = 0.0;   // arclength on the arc; unused for corner jumps
  double magnitude = 0.0;  // positive derivative value, or jump size right-left
};

struct ConditionCheck {
  bool pass = false;
  std::vector<MonotonicityViolation> violations;
  /// Largest disagreement between the analytic derivative and a central
  /// finite-difference fallback, recorded as a cross-check diagnostic.
  double fd_agreement = 0.0;
};

/// Non-increase of t along the remainder in positive orientation: on every
/// arc the derivative stays <= tol_mono, and at every interior corner the
/// left limit is >= right limit - tol_mono.
ConditionCheck check_condition_3_1(const MonotonicityProfile& profile, double tol_mono = 1e-10);

struct AngleCheck {
  double angle_at_p0 = 0.0;  // interior angle at the end point of Gamma
  double angle_at_pn = 0.0;  // interior angle at the start point of Gamma
  bool pass = false;
  double margin = 0.0;  // min(pi/2 - angle) over the two end points
};

enum class Classification { Theorem31, Theorem34, None };

std::string to_string(Classification c);

struct HypothesisReport {
  AngleCheck angle_check;
  bool complementary = false;
  bool gamma_connected = false;
  ConditionCheck condition_3_1;
  Classification classification = Classification::None;
};

struct HypothesisOptions {
  double tol_angle = 1e-9;  // strictness margin for "angle < pi/2"
  double tol_mono = 1e-10;
  int samples_per_arc = 256;
};

HypothesisReport check_hypotheses(const DomainBoundary& boundary,
                                  const BoundaryPartition& partition,
                                  const HypothesisOptions& opts = {});

}  // namespace zaremba
