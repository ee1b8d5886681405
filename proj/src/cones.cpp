#include "mpvc/cones.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mpvc/solver.hpp"

namespace mpvc {

namespace {

double dot(const std::vector<double>& a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double l1_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::fabs(a[i] - b[i]);
  return s;
}

}  // namespace

bool in_omega_tangent(OmegaPoint base, OmegaPoint d, double tol) {
  if (!in_omega(base, tol)) throw InvalidArgument("tangent cone base point is not in Omega");
  const bool a_zero = std::fabs(base.a) <= tol;
  const bool b_zero = std::fabs(base.b) <= tol;
  if (!b_zero) return a_zero ? d.a <= 0.0 : true;
  if (a_zero) return d.b >= 0.0 && d.a * d.b <= 0.0;
  return base.a < 0.0 ? d.b >= 0.0 : d.b == 0.0;
}

bool NormalConeBranch::contains(double xi, double zeta, double tol) const {
  switch (tag) {
    case NormalConeCase::APosBNeg:
      return std::fabs(xi) <= tol && std::fabs(zeta) <= tol;
    case NormalConeCase::APosBZero:
      return std::fabs(xi) <= tol && zeta >= -tol;
    case NormalConeCase::BothZero:
      return zeta >= -tol && std::fabs(xi * zeta) <= tol;
    case NormalConeCase::AZeroBNeg:
      return xi <= tol && std::fabs(zeta) <= tol;
    case NormalConeCase::AZeroBPos:
      return std::fabs(zeta) <= tol;
  }
  return false;
}

std::string NormalConeBranch::describe() const {
  switch (tag) {
    case NormalConeCase::APosBNeg: return "xi = 0, zeta = 0";
    case NormalConeCase::APosBZero: return "xi = 0, zeta >= 0";
    case NormalConeCase::BothZero: return "zeta >= 0, xi * zeta = 0";
    case NormalConeCase::AZeroBNeg: return "xi <= 0, zeta = 0";
    case NormalConeCase::AZeroBPos: return "xi free, zeta = 0";
  }
  return "";
}

NormalConeBranch normal_cone_omega(HgPoint base, double tol) {
  if (!in_omega({base.b, base.a}, tol))
    throw InvalidArgument("normal cone base point is not in Omega");
  const bool a_zero = std::fabs(base.a) <= tol;
  const bool b_zero = std::fabs(base.b) <= tol;
  if (a_zero) {
    if (b_zero) return {NormalConeCase::BothZero};
    return {base.b < 0.0 ? NormalConeCase::AZeroBNeg : NormalConeCase::AZeroBPos};
  }
  return {b_zero ? NormalConeCase::APosBZero : NormalConeCase::APosBNeg};
}

namespace {

struct Slopes {
  std::vector<double> g, h, G, H;
};

Slopes directional_slopes(const MpvcProblem& prob, std::span<const double> x,
                          const IndexSets& sets, std::span<const double> d) {
  prob.check_dim(x);
  if (d.size() != prob.dim()) throw EvalError("direction has the wrong dimension");
  Slopes s;
  s.g.assign(prob.m(), 0.0);
  for (std::size_t i : sets.active_g) s.g[i] = dot(prob.g()[i].grad(x), d);
  for (const auto& h : prob.h()) s.h.push_back(dot(h.grad(x), d));
  for (const auto& p : prob.vc()) {
    s.G.push_back(dot(p.G.grad(x), d));
    s.H.push_back(dot(p.H.grad(x), d));
  }
  return s;
}

bool mpvc_conditions(const Slopes& s, const IndexSets& sets, double slack) {
  for (std::size_t i : sets.active_g)
    if (s.g[i] > slack) return false;
  for (double v : s.h)
    if (std::fabs(v) > slack) return false;
  for (std::size_t i : sets.zero_plus)
    if (std::fabs(s.H[i]) > slack) return false;
  for (std::size_t i : sets.zero_zero)
    if (s.H[i] < -slack) return false;
  for (std::size_t i : sets.zero_minus)
    if (s.H[i] < -slack) return false;
  for (std::size_t i : sets.plus_zero)
    if (s.G[i] > slack) return false;
  return true;
}

}  // namespace

bool in_linearized_mpvc(const MpvcProblem& prob, std::span<const double> x,
                        const IndexSets& sets, std::span<const double> d, double slack) {
  return mpvc_conditions(directional_slopes(prob, x, sets, d), sets, slack);
}

bool in_linearized_product(const MpvcProblem& prob, std::span<const double> x,
                           const IndexSets& sets, std::span<const double> d, double slack) {
  const Slopes s = directional_slopes(prob, x, sets, d);
  if (!mpvc_conditions(s, sets, slack)) return false;
  for (std::size_t i : sets.zero_zero)
    if (s.G[i] * s.H[i] > slack) return false;
  return true;
}

Projection project_feasible(const MpvcProblem& prob, std::span<const double> y,
                            const std::vector<Point>& extra_starts, double scale, double weight,
                            double feas_tol) {
  const Point target(y.begin(), y.end());
  const Objective phi = [&](std::span<const double> z) {
    return l1_distance(z, target) + weight * residual_total(prob, z);
  };
  DirectSearchConfig ds;
  ds.initial_step = scale;
  ds.stop_step = scale * 1e-8;
  ds.max_iterations = 4000;

  Projection best;
  bool have = false;
  auto consider = [&](const Point& z) {
    Projection p;
    p.point = z;
    p.distance = l1_distance(z, target);
    p.residual = residual_total(prob, z);
    p.feasible = p.residual <= feas_tol;
    const bool better = !have || (p.feasible && !best.feasible) ||
                        (p.feasible == best.feasible &&
                         (p.feasible ? p.distance < best.distance
                                     : p.distance + weight * p.residual <
                                           best.distance + weight * best.residual));
    if (better) {
      best = std::move(p);
      have = true;
    }
  };

  std::vector<Point> starts{target};
  starts.insert(starts.end(), extra_starts.begin(), extra_starts.end());
  for (const auto& s : starts) {
    try {
      consider(s);
      consider(direct_search(phi, s, ds).point);
    } catch (const EvalError&) {
    }
  }
  return best;
}

TangentProbeResult tangent_probe(const MpvcProblem& prob, std::span<const double> x,
                                 std::span<const double> d, const TangentProbeConfig& cfg) {
  prob.check_dim(x);
  if (d.size() != prob.dim()) throw EvalError("direction has the wrong dimension");
  TangentProbeResult out;
  const Point base(x.begin(), x.end());
  for (double t : cfg.schedule) {
    ProbeSample s;
    s.t = t;
    s.target = base;
    for (std::size_t i = 0; i < d.size(); ++i) s.target[i] += t * d[i];
    const Projection p = project_feasible(prob, s.target, {base}, t, cfg.projection_weight,
                                          cfg.feas_rel_tol * t);
    s.projected = p.point;
    s.resolved = p.feasible;
    s.correction = p.distance / t;
    out.arc.push_back(std::move(s));
  }
  const std::size_t k = std::min(cfg.tail, out.arc.size());
  if (k == 0) return out;
  const auto tail = std::span(out.arc).last(k);
  const bool all_resolved =
      std::all_of(tail.begin(), tail.end(), [](const ProbeSample& s) { return s.resolved; });
  const double first = tail.front().correction, last = tail.back().correction;
  const bool shrinking =
      last <= cfg.zero_tol || (last <= cfg.yes_tol && last <= 0.5 * first);
  if (all_resolved && shrinking &&
      std::all_of(tail.begin(), tail.end(),
                  [&](const ProbeSample& s) { return s.correction <= cfg.match_tol; }))
    out.verdict = ProbeVerdict::Yes;
  else if (all_resolved &&
           std::all_of(tail.begin(), tail.end(),
                       [&](const ProbeSample& s) { return s.correction >= cfg.no_margin; }))
    out.verdict = ProbeVerdict::No;
  return out;
}

const char* to_string(ProbeVerdict v) {
  switch (v) {
    case ProbeVerdict::Yes: return "YES";
    case ProbeVerdict::No: return "NO";
    case ProbeVerdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "";
}

const char* to_string(NormalConeCase c) {
  switch (c) {
    case NormalConeCase::APosBNeg: return "a>0,b<0";
    case NormalConeCase::APosBZero: return "a>0,b=0";
    case NormalConeCase::BothZero: return "a=0,b=0";
    case NormalConeCase::AZeroBNeg: return "a=0,b<0";
    case NormalConeCase::AZeroBPos: return "a=0,b>0";
  }
  return "";
}

}  // namespace mpvc
