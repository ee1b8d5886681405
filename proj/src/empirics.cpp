#include "mpvc/empirics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

namespace mpvc {

namespace {

double l1_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::fabs(a[i] - b[i]);
  return s;
}

void normalize_l1(Point& p) {
  double s = 0.0;
  for (double v : p) s += std::fabs(v);
  if (s > 0.0)
    for (double& v : p) v /= s;
}

/// Feasible points of an axis-aligned grid around center (n <= 2).
struct FeasibleGrid {
  std::vector<Point> points;
  double step = 0.0;
};

FeasibleGrid feasible_grid(const MpvcProblem& prob, std::span<const double> center,
                           double half_width, std::size_t half_count) {
  FeasibleGrid grid;
  grid.step = half_width / static_cast<double>(half_count);
  const std::size_t n = prob.dim();
  const std::size_t per_axis = 2 * half_count + 1;
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= per_axis;
  Point p(n);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rest = flat;
    for (std::size_t i = 0; i < n; ++i) {
      const auto k = static_cast<double>(rest % per_axis) - static_cast<double>(half_count);
      rest /= per_axis;
      p[i] = center[i] + k * grid.step;
    }
    try {
      if (residual_total(prob, p) <= 1e-12) grid.points.push_back(p);
    } catch (const EvalError&) {
    }
  }
  return grid;
}

}  // namespace

Point sample_l1_ball(std::mt19937_64& rng, std::span<const double> center, double radius) {
  const std::size_t n = center.size();
  std::exponential_distribution<double> expo(1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::bernoulli_distribution coin(0.5);
  // Exponential weights give a uniform point on the simplex; the radial
  // factor u^(1/n) makes the ball sample uniform.
  Point w(n);
  double sum = 0.0;
  for (double& v : w) {
    v = expo(rng);
    sum += v;
  }
  const double r = radius * std::pow(unit(rng), 1.0 / static_cast<double>(n));
  Point x(center.begin(), center.end());
  for (std::size_t i = 0; i < n; ++i) x[i] += (coin(rng) ? 1.0 : -1.0) * r * w[i] / sum;
  return x;
}

ErrorBoundScan scan_error_bound(const MpvcProblem& prob, std::span<const double> center,
                                double radius, std::size_t samples, std::uint64_t seed,
                                const ScanConfig& cfg) {
  prob.check_dim(center);
  if (!(radius > 0.0)) throw InvalidArgument("scan radius must be positive");
  if (!is_feasible(prob, center, kDefaultTolActive))
    throw InfeasiblePointError("scan center is not feasible");

  ErrorBoundScan scan;
  scan.center.assign(center.begin(), center.end());
  scan.radius = radius;
  scan.sample_count = samples;
  scan.seed = seed;
  scan.approximate = prob.dim() > cfg.grid_max_dim;

  // A sample within radius of the center has a feasible point (the center)
  // within radius, so its projection lies within 2 * radius of the center.
  FeasibleGrid grid;
  if (!scan.approximate && samples > 0) {
    grid = feasible_grid(prob, center, 2.0 * radius, 2 * cfg.grid_divisions);
    scan.grid_step = grid.step;
  }

  std::mt19937_64 rng(seed);
  double best_residual = 0.0;
  for (std::size_t k = 0; k < samples; ++k) {
    ErrorBoundSample s;
    s.x = sample_l1_ball(rng, center, radius);
    s.residual = residual_total(prob, s.x);
    if (s.residual <= 0.0) {
      s.dist = 0.0;
    } else if (!scan.approximate) {
      double best = l1_distance(s.x, center);
      const Point* nearest = nullptr;
      for (const auto& g : grid.points) {
        const double d = l1_distance(s.x, g);
        if (d < best) {
          best = d;
          nearest = &g;
        }
      }
      std::vector<Point> starts{scan.center};
      if (nearest) starts.push_back(*nearest);
      const Projection p = project_feasible(prob, s.x, starts, grid.step, 100.0, 1e-12);
      if (p.feasible) best = std::min(best, p.distance);
      s.dist = best;
    } else {
      const Projection p = project_feasible(prob, s.x, {scan.center}, radius, 100.0, 1e-10);
      s.dist = p.feasible ? std::min(p.distance, l1_distance(s.x, center))
                          : l1_distance(s.x, center);
    }
    if (s.residual > cfg.ratio_floor) {
      s.ratio = s.dist / s.residual;
      // Among samples tying for the maximum, the largest residual gives the
      // tightest error bar.
      const double tie = 1e-9 * scan.c_hat;
      if (*s.ratio > scan.c_hat + tie) {
        scan.c_hat = *s.ratio;
        best_residual = s.residual;
      } else if (*s.ratio >= scan.c_hat - tie && s.residual > best_residual) {
        scan.c_hat = std::max(scan.c_hat, *s.ratio);
        best_residual = s.residual;
      }
    }
    scan.samples.push_back(std::move(s));
  }
  if (best_residual > 0.0 && !scan.approximate) scan.error_bar = 2.0 * grid.step / best_residual;
  scan.unbounded_flag = !std::isfinite(scan.c_hat) || scan.c_hat > cfg.unbounded_threshold;
  return scan;
}

PenaltyProfile penalty_sweep(const MpvcProblem& prob, std::span<const double> center,
                             const std::vector<double>& alphas, const SweepConfig& cfg) {
  prob.check_dim(center);
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (!(alphas[i] >= 0.0)) throw InvalidArgument("penalty parameters must be nonnegative");
    if (i > 0 && !(alphas[i] > alphas[i - 1]))
      throw InvalidArgument("penalty parameters must be strictly increasing");
  }
  PenaltyProfile prof;
  prof.center.assign(center.begin(), center.end());
  prof.exact_tol = cfg.exact_tol;

  SolveConfig inner = cfg.inner;
  inner.starts = {prof.center};
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (std::size_t k = 0; k < cfg.random_starts; ++k) {
    Point p = prof.center;
    for (double& v : p) v += cfg.start_half_width * unit(rng);
    inner.starts.push_back(std::move(p));
  }

  for (double alpha : alphas) {
    const SolveResult r = minimize_penalty(prob, alpha, inner);
    PenaltyRow row;
    row.alpha = alpha;
    row.minimizer = r.point;
    row.value = r.value;
    row.distance = l1_distance(r.point, center);
    row.residual = r.residual;
    prof.rows.push_back(std::move(row));
  }
  for (std::size_t k = prof.rows.size(); k-- > 0;) {
    if (prof.rows[k].distance > cfg.exact_tol) break;
    prof.alpha_bar = prof.rows[k].alpha;
  }
  return prof;
}

std::vector<Point> acq_directions(std::size_t dim, std::size_t count, std::uint64_t seed) {
  std::vector<Point> out;
  if (dim == 2) {
    for (std::size_t k = 0; k < count; ++k) {
      const double th = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(count);
      Point d{std::cos(th), std::sin(th)};
      for (double& v : d)
        if (std::fabs(v) < 1e-15) v = 0.0;
      normalize_l1(d);
      out.push_back(std::move(d));
    }
    return out;
  }
  for (std::size_t i = 0; i < dim && out.size() < count; ++i)
    for (double s : {1.0, -1.0}) {
      if (out.size() >= count) break;
      Point e(dim, 0.0);
      e[i] = s;
      out.push_back(std::move(e));
    }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  while (out.size() < count && dim > 1) {
    Point p(dim);
    for (double& v : p) v = normal(rng);
    normalize_l1(p);
    out.push_back(std::move(p));
  }
  return out;
}

AcqProbeReport probe_acq(const MpvcProblem& prob, std::span<const double> x,
                         const IndexSets& sets, const std::vector<Point>& directions,
                         const AcqProbeConfig& cfg) {
  AcqProbeReport rep;
  for (const auto& d : directions) {
    ConeMembershipReport c;
    c.d = d;
    c.in_L_mpvc = in_linearized_mpvc(prob, x, sets, d);
    c.in_L_product = in_linearized_product(prob, x, sets, d);
    if (cfg.probe_all || c.in_L_mpvc) {
      TangentProbeResult t = tangent_probe(prob, x, d, cfg.probe);
      c.probed = true;
      c.in_T_numeric = t.verdict;
      c.arc = std::move(t.arc);
    }
    if (c.in_T_numeric == ProbeVerdict::No) {
      if (c.in_L_mpvc) rep.mpvc_counterexamples.push_back(d);
      if (c.in_L_product) rep.product_counterexamples.push_back(d);
    }
    rep.directions.push_back(std::move(c));
  }
  if (!rep.mpvc_counterexamples.empty()) rep.acq_mpvc = AcqVerdict::Refuted;
  if (!rep.product_counterexamples.empty()) rep.acq_product = AcqVerdict::Refuted;
  return rep;
}

const CqVerdict& CqReport::verdict(CqName name) const {
  for (const auto& v : verdicts)
    if (v.name == name) return v;
  throw InvalidArgument(std::string("report has no verdict for ") + to_string(name));
}

namespace {

CqVerdict acq_verdict(CqName name, AcqVerdict status, const std::vector<Point>& witnesses,
                      const AcqProbeReport& rep) {
  CqVerdict v;
  v.name = name;
  if (status == AcqVerdict::Corroborated) {
    v.status = CqStatus::NoViolationFound;
    v.notes = "no counterexample among " + std::to_string(rep.directions.size()) + " directions";
    return v;
  }
  v.status = CqStatus::Refuted;
  DirectionCertificate dc;
  dc.d = witnesses.front();
  for (const auto& c : rep.directions)
    if (c.d == dc.d && !c.arc.empty()) dc.slack = c.arc.back().correction;
  v.certificate = std::move(dc);
  v.notes = std::to_string(witnesses.size()) +
            " linearized direction(s) with no tangent arc; slack is the final normalized correction";
  return v;
}

std::string format_point(const Point& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", p[i]);
    s += (i ? ", " : "") + std::string(buf);
  }
  return s + ")";
}

}  // namespace

CqReport full_report(const MpvcProblem& prob, std::span<const double> x, const IndexSets& sets,
                     const FullReportConfig& cfg) {
  CqReport rep;
  rep.point.assign(x.begin(), x.end());
  rep.sets = sets;
  rep.verdicts.push_back(check_licq(prob, x, sets));
  rep.verdicts.push_back(check_mfcq(prob, x, sets));
  rep.verdicts.push_back(check_gmfcq(prob, x, sets, cfg.search.branch_cap));
  rep.verdicts.push_back(refute_pseudonormality(prob, x, sets, cfg.search));
  rep.verdicts.push_back(refute_quasinormality(prob, x, sets, cfg.search));
  rep.chain = chain_violations(rep.verdicts);

  rep.acq = probe_acq(prob, x, sets, acq_directions(prob.dim(), cfg.acq_direction_count, cfg.seed),
                      cfg.acq);
  rep.verdicts.push_back(acq_verdict(CqName::AcqMpvc, rep.acq.acq_mpvc, rep.acq.mpvc_counterexamples, rep.acq));
  rep.verdicts.push_back(
      acq_verdict(CqName::AcqProduct, rep.acq.acq_product, rep.acq.product_counterexamples, rep.acq));

  const CqStatus quasi = rep.verdict(CqName::Quasinormality).status;
  if (quasi != CqStatus::Refuted && rep.acq.acq_mpvc == AcqVerdict::Refuted)
    rep.discrepancies.push_back(
        std::string("quasinormality is ") + to_string(quasi) +
        " but the MPVC linearized cone contains direction " +
        format_point(rep.acq.mpvc_counterexamples.front()) + " with no tangent arc");
  return rep;
}

AuditConfig::AuditConfig() {
  report.acq.probe_all = false;
  report.acq_direction_count = 64;
}

namespace {

AuditInstance audit_one(const MpvcProblem& prob, const Point& x, const FullReportConfig& cfg,
                        std::size_t index) {
  const IndexSets sets = classify(prob, x);
  const CqReport rep = full_report(prob, x, sets, cfg);
  AuditInstance inst;
  inst.index = index;
  inst.name = prob.name();
  for (const auto& v : rep.verdicts) inst.statuses.emplace_back(v.name, v.status);
  inst.chain = rep.chain;
  inst.discrepancies = rep.discrepancies.size();
  inst.biactive = sets.zero_zero.size();
  return inst;
}

void tally(AuditReport& rep) {
  for (const auto& i : rep.instances) {
    rep.chain_violations += i.chain.size();
    rep.discrepancies += i.discrepancies;
  }
}

}  // namespace

AuditReport audit_corpus(const AuditConfig& cfg, std::uint64_t seed) {
  AuditReport rep;
  rep.seed = seed;
  for (std::size_t k = 0; k < cfg.generator.instances; ++k) {
    const MpvcProblem prob = generate_instance(cfg.generator, seed, k);
    rep.instances.push_back(audit_one(prob, Point(prob.dim(), 0.0), cfg.report, k));
  }
  tally(rep);
  return rep;
}

AuditReport audit_problems(const std::vector<std::pair<MpvcProblem, Point>>& corpus,
                           const FullReportConfig& cfg) {
  AuditReport rep;
  for (std::size_t k = 0; k < corpus.size(); ++k)
    rep.instances.push_back(audit_one(corpus[k].first, corpus[k].second, cfg, k));
  tally(rep);
  return rep;
}

const char* to_string(AcqVerdict v) {
  return v == AcqVerdict::Corroborated ? "CORROBORATED" : "REFUTED";
}

}  // namespace mpvc
