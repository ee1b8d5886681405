// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails.
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "mpvc/report.hpp"

using namespace mpvc;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

MpvcProblem fixture(const char* name) {
  return load_problem(std::string(MPVC_FIXTURE_DIR) + "/" + name);
}

const std::vector<double> kOrigin{0.0, 0.0};

template <typename... Args>
std::string fmt(const char* f, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome dist_omega_oracle() {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> box(-5.0, 5.0);
  const double step = 1e-3;
  double worst = 0.0;
  for (int k = 0; k < 10000; ++k) {
    const double a = box(rng), b = box(rng);
    worst = std::max(worst, std::fabs(dist_omega({a, b}) - oracle::grid_dist_omega(a, b, 6.0, step)));
  }
  return {worst <= 2.0 * step, fmt("max deviation %.3g over 10000 points", worst)};
}

Outcome example_21() {
  const MpvcProblem p = fixture("ex21.mpvc");
  const IndexSets s = classify(p, kOrigin);
  const CqVerdict licq = check_licq(p, kOrigin, s);
  const CqVerdict mfcq = check_mfcq(p, kOrigin, s);
  const CqVerdict gmfcq = check_gmfcq(p, kOrigin, s);
  bool all_infeasible = true;
  for (const auto& br : enumerate_multiplier_branches(p, kOrigin, s))
    all_infeasible &= br.lp.status == LpStatus::Infeasible;
  const double s_star = mfcq.lp_value.value_or(1.0);
  const bool ok = licq.status == CqStatus::Refuted && mfcq.status == CqStatus::Refuted &&
                  s_star <= 1e-9 && gmfcq.status == CqStatus::Certified && all_infeasible;
  return {ok, fmt("LICQ %s, MFCQ %s (s* = %.3g), GMFCQ %s", to_string(licq.status),
                  to_string(mfcq.status), s_star, to_string(gmfcq.status))};
}

Outcome example_22() {
  const MpvcProblem p = fixture("ex22.mpvc");
  const IndexSets s = classify(p, kOrigin);
  const CqVerdict gmfcq = check_gmfcq(p, kOrigin, s);
  if (gmfcq.status != CqStatus::Refuted) return {false, "GMFCQ not refuted"};
  const auto& m = std::get<MultiplierVector>(gmfcq.certificate);
  const double dev = std::max({std::fabs(m.lambda[0] - 0.5), std::fabs(m.eta_G[0] - 0.5),
                               std::fabs(m.eta_H[0])});
  const CqVerdict pn = refute_pseudonormality(p, kOrigin, s);
  return {dev <= 1e-9 && pn.status == CqStatus::NoViolationFound,
          fmt("multiplier (%.12g, %.12g, %.12g), pseudonormality %s", m.lambda[0], m.eta_G[0],
              m.eta_H[0], to_string(pn.status))};
}

Outcome example_41() {
  const MpvcProblem p = fixture("ex41.mpvc");
  const IndexSets s = classify(p, kOrigin);
  const CqReport r = full_report(p, kOrigin, s);
  const CqVerdict& qn = r.verdict(CqName::Quasinormality);
  if (qn.status != CqStatus::Refuted) return {false, "quasinormality not refuted"};
  const auto& w = std::get<SequenceWitness>(qn.certificate);
  const double res = stationarity_residual(p, kOrigin, w.multiplier);
  bool signs = !w.ts.empty();
  for (double t : w.ts) {
    std::vector<double> y(kOrigin);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += t * w.direction[i];
    signs &= t <= 1e-3 && quasinormal_signs_hold(p, y, w.multiplier, 1e-14);
  }
  const bool ok = res <= 1e-8 && satisfies_sign_pattern(s, w.multiplier, true, 0.0) &&
                  w.multiplier.l1_norm() > 0.0 && signs &&
                  r.acq.directions.size() == 360 && r.acq.acq_mpvc == AcqVerdict::Corroborated;
  return {ok, fmt("witness residual %.3g, %zu tail points, acq_mpvc %s over %zu directions", res,
                  w.ts.size(), to_string(r.acq.acq_mpvc), r.acq.directions.size())};
}

Outcome penalty_exactness() {
  const MpvcProblem p = fixture("ex22.mpvc");
  const PenaltyProfile prof = penalty_sweep(p, kOrigin, {0.0, 0.1, 1.0, 10.0});
  double worst = 0.0;
  for (const auto& r : prof.rows) worst = std::max(worst, r.distance);
  return {prof.rows.size() == 4 && worst <= 1e-6, fmt("max minimizer distance %.3g", worst)};
}

Outcome chain_audit() {
  AuditConfig cfg;
  cfg.generator.instances = 200;
  const AuditReport a = audit_corpus(cfg, 7);
  const AuditReport b = audit_corpus(cfg, 7);
  const bool identical = json(a).dump() == json(b).dump();
  return {a.instances.size() == 200 && a.chain_violations == 0 && identical,
          fmt("%zu instances, %zu chain violations, rerun %s", a.instances.size(),
              a.chain_violations, identical ? "identical" : "differs")};
}

Outcome error_bound() {
  const MpvcProblem p = fixture("ex22.mpvc");
  const ErrorBoundScan s = scan_error_bound(p, kOrigin, 0.1, 500, 7);
  const ErrorBoundScan d = scan_error_bound(p, kOrigin, 0.1, 1000, 7);
  bool below = true;
  for (const auto& x : s.samples)
    if (x.ratio) below &= *x.ratio <= s.c_hat;
  const double bar = std::max(s.error_bar, d.error_bar);
  const bool ok = !s.unbounded_flag && std::isfinite(s.c_hat) && below &&
                  std::fabs(s.c_hat - d.c_hat) <= bar;
  return {ok, fmt("c_hat %.6g (500) vs %.6g (1000), error bar %.3g", s.c_hat, d.c_hat, bar)};
}

Outcome cone_consistency() {
  std::vector<MpvcProblem> corpus{fixture("ex21.mpvc"), fixture("ex22.mpvc"), fixture("ex41.mpvc")};
  GeneratorConfig gen;
  for (std::size_t k = 0; k < 50; ++k) corpus.push_back(generate_instance(gen, 8, k));
  std::size_t probed = 0, yes = 0, probe_violations = 0, sampled = 0, cone_violations = 0;
  std::mt19937_64 rng(8);
  std::normal_distribution<double> normal;
  for (const auto& p : corpus) {
    const std::vector<double> x(p.dim(), 0.0);
    const IndexSets s = classify(p, x);
    for (const auto& d : acq_directions(p.dim(), 64, 8)) {
      ++probed;
      if (tangent_probe(p, x, d).verdict != ProbeVerdict::Yes) continue;
      ++yes;
      if (!in_linearized_product(p, x, s, d)) ++probe_violations;
    }
  }
  for (int k = 0; k < 10000; ++k) {
    const auto& p = corpus[k % corpus.size()];
    const std::vector<double> x(p.dim(), 0.0);
    const IndexSets s = classify(p, x);
    std::vector<double> d(p.dim());
    for (double& v : d) v = normal(rng);
    // Snap some coordinates to zero so boundary directions are exercised.
    if (k % 3 == 0) d[k % d.size()] = 0.0;
    ++sampled;
    if (in_linearized_product(p, x, s, d) && !in_linearized_mpvc(p, x, s, d)) ++cone_violations;
  }
  return {probe_violations == 0 && cone_violations == 0 && sampled == 10000,
          fmt("%zu probes (%zu YES), %zu YES outside the product cone; %zu product-not-mpvc "
              "among %zu directions",
              probed, yes, probe_violations, cone_violations, sampled)};
}

Outcome gradients() {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> box(-2.0, 2.0);
  ExprGenConfig cfg;
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const std::size_t dim = 1 + k % 3;
    const Expr e = random_expr(rng, dim, cfg);
    std::vector<double> x(dim);
    for (double& v : x) v = box(rng);
    const auto g = e.grad(x);
    const auto fd = oracle::fd_gradient([&](const std::vector<double>& y) { return e.eval(y); }, x, 1e-6);
    for (std::size_t i = 0; i < dim; ++i)
      worst = std::max(worst, std::fabs(g[i] - fd[i]) / std::max(1.0, std::fabs(g[i])));
  }
  return {worst <= 1e-5, fmt("max relative deviation %.3g over 1000 expressions", worst)};
}

Outcome round_trip() {
  std::size_t checked = 0, failed = 0;
  for (const char* f : {"ex21.mpvc", "ex22.mpvc", "ex41.mpvc"}) {
    const MpvcProblem p = fixture(f);
    const MpvcProblem q = parse_problem(p.to_text());
    bool same = structurally_equal(p.objective(), q.objective()) && p.m() == q.m() &&
                p.l() == q.l() && p.q() == q.q() && p.vars() == q.vars();
    for (std::size_t i = 0; same && i < p.m(); ++i)
      same = structurally_equal(p.g()[i].expr(), q.g()[i].expr());
    for (std::size_t i = 0; same && i < p.l(); ++i)
      same = structurally_equal(p.h()[i].expr(), q.h()[i].expr());
    for (std::size_t i = 0; same && i < p.q(); ++i)
      same = structurally_equal(p.vc()[i].G.expr(), q.vc()[i].G.expr()) &&
             structurally_equal(p.vc()[i].H.expr(), q.vc()[i].H.expr());
    ++checked;
    failed += !same;
  }
  std::mt19937_64 rng(10);
  ExprGenConfig cfg;
  cfg.nonsmooth = true;
  const VarSpace vars({"x1", "x2", "x3"});
  for (int k = 0; k < 500; ++k) {
    const Expr e = random_expr(rng, 3, cfg);
    const Expr back = parse_expr(e.to_string(vars), vars);
    ++checked;
    failed += !structurally_equal(e, back);
  }
  return {failed == 0, fmt("%zu of %zu round trips differ", failed, checked)};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"dist_omega closed form vs grid oracle", dist_omega_oracle},
      {"ex21 verdicts at the origin", example_21},
      {"ex22 multiplier and pseudonormality", example_22},
      {"ex41 quasinormality witness and ACQ", example_41},
      {"penalty exactness sweep", penalty_exactness},
      {"implication-chain audit", chain_audit},
      {"error-bound scan stability", error_bound},
      {"cone consistency", cone_consistency},
      {"symbolic gradients vs finite differences", gradients},
      {"parser round trip", round_trip},
  };
  int failures = 0, n = 0;
  for (const auto& c : criteria) {
    ++n;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s  %2d  %s: %s\n", o.pass ? "PASS" : "FAIL", n, c.name, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
