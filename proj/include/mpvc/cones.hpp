#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mpvc/model.hpp"
#include "mpvc/penalty.hpp"

namespace mpvc {

// ---------------------------------------------------------------------------
// The vanishing set and its cones

/// Tangent cone of {b >= 0, ab <= 0} at base = (G, H), direction d = (dG, dH).
/// Base coordinates within tol of zero count as zero.
///
///   b > 0, a < 0 : all of R^2
///   b > 0, a = 0 : dG <= 0
///   b = 0, a < 0 : dH >= 0
///   b = 0, a > 0 : dH = 0
///   a = b = 0    : dH >= 0 and dG * dH <= 0
bool in_omega_tangent(OmegaPoint base, OmegaPoint d, double tol = kDefaultTolActive);

/// A point written in the transposed order used for the limiting normal cone,
/// a = H-value and b = G-value, so the set is {a >= 0, ab <= 0}.
struct HgPoint {
  double a = 0.0;
  double b = 0.0;
};

inline HgPoint transpose(OmegaPoint p) { return {p.b, p.a}; }

enum class NormalConeCase {
  APosBNeg,   // {0}
  APosBZero,  // xi = 0, zeta >= 0
  BothZero,   // zeta >= 0, xi * zeta = 0
  AZeroBNeg,  // xi <= 0, zeta = 0
  AZeroBPos,  // xi free, zeta = 0
};

/// Limiting normal cone branch of the vanishing set at a base point.
/// (xi, zeta) pairs with (a, b), i.e. xi is the H-side and zeta the G-side.
struct NormalConeBranch {
  NormalConeCase tag;

  bool contains(double xi, double zeta, double tol = 0.0) const;
  std::string describe() const;
};

NormalConeBranch normal_cone_omega(HgPoint base, double tol = kDefaultTolActive);

// ---------------------------------------------------------------------------
// Linearized cones of the feasible set

/// MPVC linearized cone: g (I_g) <= 0, h = 0, H (I_0+) = 0,
/// H (I_00 u I_0-) >= 0, G (I_+0) <= 0. Comparisons use slack.
bool in_linearized_mpvc(const MpvcProblem& prob, std::span<const double> x,
                        const IndexSets& sets, std::span<const double> d, double slack = 0.0);

/// Linearized cone through the tangent cone of the product set: identical to
/// the above plus the coupling (grad G . d)(grad H . d) <= 0 on I_00.
bool in_linearized_product(const MpvcProblem& prob, std::span<const double> x,
                           const IndexSets& sets, std::span<const double> d,
                           double slack = 0.0);

// ---------------------------------------------------------------------------
// Numerical tangent probe

enum class ProbeVerdict { Yes, No, Inconclusive };

struct TangentProbeConfig {
  std::vector<double> schedule{1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
  double match_tol = 0.1;
  /// "Tends to zero": the last tail correction is at most zero_tol, or at
  /// most yes_tol and no more than half the first tail correction.
  double yes_tol = 1e-3;
  double zero_tol = 1e-8;
  /// Normalized correction at or above this on the tail means "no".
  double no_margin = 0.25;
  std::size_t tail = 3;
  /// Exact-penalty weight for the local projection.
  double projection_weight = 100.0;
  /// Feasibility accepted for a projected point, relative to t.
  double feas_rel_tol = 1e-6;
};

struct ProbeSample {
  double t = 0.0;
  Point target;     // x + t d
  Point projected;  // nearest feasible point found
  double correction = 0.0;  // ||projected - target||_1 / t
  bool resolved = false;    // projected is feasible
};

struct TangentProbeResult {
  ProbeVerdict verdict = ProbeVerdict::Inconclusive;
  std::vector<ProbeSample> arc;
};

/// Whether feasible points track x + t d as t decreases. Expects x feasible
/// and ||d||_1 = 1.
TangentProbeResult tangent_probe(const MpvcProblem& prob, std::span<const double> x,
                                 std::span<const double> d, const TangentProbeConfig& cfg = {});

/// Nearest feasible point to y by exact-penalty direct search, seeded from y
/// and the extra starts. Returns the best point found and whether it is
/// feasible within feas_tol.
struct Projection {
  Point point;
  double distance = 0.0;
  double residual = 0.0;
  bool feasible = false;
};
Projection project_feasible(const MpvcProblem& prob, std::span<const double> y,
                            const std::vector<Point>& extra_starts, double scale,
                            double weight, double feas_tol);

struct ConeMembershipReport {
  Point d;
  bool in_L_mpvc = false;
  bool in_L_product = false;
  ProbeVerdict in_T_numeric = ProbeVerdict::Inconclusive;
  bool probed = false;
  std::vector<ProbeSample> arc;
};

const char* to_string(ProbeVerdict v);
const char* to_string(NormalConeCase c);

}  // namespace mpvc
