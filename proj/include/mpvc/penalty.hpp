#pragma once

#include <span>

#include "mpvc/model.hpp"

namespace mpvc {

/// A value of one vanishing pair, (a, b) = (G(x), H(x)).
struct OmegaPoint {
  double a = 0.0;
  double b = 0.0;
};

/// l1 distance from p to {(a, b) : b >= 0, a*b <= 0}, i.e. max{0, -b, min{a, b}}.
double dist_omega(OmegaPoint p);

/// Membership in the vanishing set with a tolerance on both conditions.
bool in_omega(OmegaPoint p, double tol = 0.0);

struct PenaltyValue {
  double objective = 0.0;
  double violation = 0.0;
  double alpha = 0.0;
  double total = 0.0;
};

/// f(x) + alpha * (||g+||_1 + ||h||_1 + sum_i dist_omega(G_i, H_i)).
PenaltyValue penalty_tailored(const MpvcProblem& prob, std::span<const double> x, double alpha);

/// f(x) + alpha * sum_i max{-H_i, 0} + alpha * sum_i max{G_i H_i, 0}.
/// Only defined for problems without g and h.
PenaltyValue penalty_l1(const MpvcProblem& prob, std::span<const double> x, double alpha);

}  // namespace mpvc
