#include "mpvc/penalty.hpp"

#include <algorithm>
#include <cmath>

namespace mpvc {

double dist_omega(OmegaPoint p) { return std::max({0.0, -p.b, std::min(p.a, p.b)}); }

bool in_omega(OmegaPoint p, double tol) { return p.b >= -tol && p.a * p.b <= tol; }

PenaltyValue penalty_tailored(const MpvcProblem& prob, std::span<const double> x, double alpha) {
  if (!(alpha >= 0.0)) throw InvalidArgument("penalty parameter must be nonnegative");
  PenaltyValue v;
  v.alpha = alpha;
  v.objective = prob.f(x);
  v.violation = residual_total(prob, x);
  v.total = v.objective + alpha * v.violation;
  return v;
}

PenaltyValue penalty_l1(const MpvcProblem& prob, std::span<const double> x, double alpha) {
  if (!(alpha >= 0.0)) throw InvalidArgument("penalty parameter must be nonnegative");
  if (prob.m() != 0 || prob.l() != 0)
    throw InvalidArgument("the l1 penalty is only defined for problems without g and h");
  PenaltyValue v;
  v.alpha = alpha;
  v.objective = prob.f(x);
  for (const auto& pair : prob.vc()) {
    const double G = pair.G.value(x);
    const double H = pair.H.value(x);
    v.violation += std::max(-H, 0.0) + std::max(G * H, 0.0);
  }
  v.total = v.objective + alpha * v.violation;
  return v;
}

}  // namespace mpvc
