#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "mpvc/cones.hpp"
#include "mpvc/cq.hpp"
#include "mpvc/generator.hpp"

using namespace mpvc;

namespace {

MpvcProblem fixture(const char* name) {
  return load_problem(std::string(MPVC_FIXTURE_DIR) + "/" + name);
}

const std::vector<double> kOrigin{0.0, 0.0};

/// Independent re-verification of a refuting multiplier certificate.
void check_multiplier_certificate(const MpvcProblem& p, const std::vector<double>& x,
                                  const IndexSets& s, const MultiplierVector& m) {
  CHECK(stationarity_residual(p, x, m) <= 1e-8);
  CHECK(satisfies_sign_pattern(s, m, true, 0.0));
  CHECK(m.l1_norm() == doctest::Approx(1.0).epsilon(1e-12));
}

}  // namespace

TEST_CASE("LICQ") {
  const MpvcProblem p21 = fixture("ex21.mpvc");
  const CqVerdict v = check_licq(p21, kOrigin, classify(p21, kOrigin));
  CHECK(v.status == CqStatus::Refuted);
  const auto& rc = std::get<RankCertificate>(v.certificate);
  CHECK(rc.rows == 3);
  CHECK(rc.rank == 2);

  const MpvcProblem simple =
      parse_problem("[vars] x1 x2\n[objective] x1\n[vc]\nG: x2 ; H: x1\n");
  const std::vector<double> pt{0.0, 1.0};
  const IndexSets s = classify(simple, pt);
  CHECK(s.zero_plus == std::vector<std::size_t>{0});
  CHECK(check_licq(simple, pt, s).status == CqStatus::Certified);

  const std::vector<double> inactive{1.0, -1.0};
  CHECK(check_licq(simple, inactive, classify(simple, inactive)).status == CqStatus::Certified);
}

TEST_CASE("MFCQ") {
  const MpvcProblem p21 = fixture("ex21.mpvc");
  const IndexSets s21 = classify(p21, kOrigin);
  const CqVerdict v = check_mfcq(p21, kOrigin, s21);
  CHECK(v.status == CqStatus::Refuted);
  // Alternative-theorem certificate: a nonnegative combination on the strict rows.
  const auto& m = std::get<MultiplierVector>(v.certificate);
  CHECK(stationarity_residual(p21, kOrigin, m) <= 1e-8);
  CHECK(satisfies_sign_pattern(s21, m, false, 0.0));
  CHECK(m.lambda[0] + m.eta_G[0] == doctest::Approx(1.0));

  const MpvcProblem lin = parse_problem(
      "[vars] x1 x2\n[objective] x1\n[g]\nx1\n[vc]\nG: -1 ; H: 1 + x2\n");
  const IndexSets sl = classify(lin, kOrigin);
  CHECK(sl.plus_minus == std::vector<std::size_t>{0});
  const CqVerdict c = check_mfcq(lin, kOrigin, sl);
  REQUIRE(c.status == CqStatus::Certified);
  const auto& d = std::get<DirectionCertificate>(c.certificate);
  CHECK(d.slack == doctest::Approx(1.0));
  CHECK(d.d[0] <= -1.0 + 1e-9);

  const std::vector<double> inactive{1.0, -1.0};
  const MpvcProblem simple = parse_problem("[vars] x1 x2\n[objective] x1\n[vc]\nG: x2 ; H: x1\n");
  const CqVerdict none = check_mfcq(simple, inactive, classify(simple, inactive));
  CHECK(none.status == CqStatus::Certified);
  CHECK(std::get<DirectionCertificate>(none.certificate).slack == doctest::Approx(1.0));

  // Dependent equality-type gradients fail at the rank stage.
  const MpvcProblem dep = parse_problem(
      "[vars] x1 x2\n[objective] x1\n[h]\nx1\n[vc]\nG: 1 ; H: 2*x1\n");
  const CqVerdict r = check_mfcq(dep, kOrigin, classify(dep, kOrigin));
  CHECK(r.status == CqStatus::Refuted);
  CHECK(std::get<RankCertificate>(r.certificate).stage == "linear independence");
}

TEST_CASE("MFCQ direction re-verifies with the strict margin") {
  GeneratorConfig gen;
  int certified = 0;
  for (std::size_t k = 0; k < 200; ++k) {
    const MpvcProblem p = generate_instance(gen, 17, k);
    const std::vector<double> x(p.dim(), 0.0);
    const IndexSets s = classify(p, x);
    const CqVerdict v = check_mfcq(p, x, s);
    if (v.status != CqStatus::Certified) continue;
    ++certified;
    const auto& c = std::get<DirectionCertificate>(v.certificate);
    auto dot = [&](const std::vector<double>& g) {
      double t = 0.0;
      for (std::size_t i = 0; i < g.size(); ++i) t += g[i] * c.d[i];
      return t;
    };
    for (auto i : s.active_g) CHECK(dot(p.g()[i].grad(x)) <= -kEpsStrict);
    for (auto i : s.zero_minus) CHECK(dot(p.vc()[i].H.grad(x)) >= kEpsStrict);
    for (auto i : s.plus_zero) CHECK(dot(p.vc()[i].G.grad(x)) <= -kEpsStrict);
    for (auto i : s.zero_zero) CHECK(dot(p.vc()[i].G.grad(x)) <= -kEpsStrict);
    for (const auto& h : p.h()) CHECK(std::fabs(dot(h.grad(x))) <= 1e-9);
  }
  CHECK(certified > 5);
}

TEST_CASE("multiplier branches on the fixtures") {
  const MpvcProblem p21 = fixture("ex21.mpvc");
  for (const auto& br : enumerate_multiplier_branches(p21, kOrigin, classify(p21, kOrigin))) {
    CHECK(br.lp.status == LpStatus::Infeasible);
    CHECK(!br.multiplier);
  }

  const MpvcProblem p22 = fixture("ex22.mpvc");
  const IndexSets s22 = classify(p22, kOrigin);
  const auto b22 = enumerate_multiplier_branches(p22, kOrigin, s22);
  REQUIRE(b22.size() == 2);
  CHECK(b22[0].branch.at(0) == BiactiveBranch::HZero);
  REQUIRE(b22[0].multiplier);
  const MultiplierVector& m = *b22[0].multiplier;
  CHECK(std::fabs(m.lambda[0] - 0.5) <= 1e-9);
  CHECK(std::fabs(m.eta_G[0] - 0.5) <= 1e-9);
  CHECK(m.eta_H[0] == 0.0);
  check_multiplier_certificate(p22, kOrigin, s22, m);
  CHECK(!b22[1].multiplier);

  const MpvcProblem p41 = fixture("ex41.mpvc");
  const IndexSets s41 = classify(p41, kOrigin);
  bool found = false;
  for (const auto& br : enumerate_multiplier_branches(p41, kOrigin, s41))
    if (br.multiplier) {
      found = true;
      CHECK(br.multiplier->lambda[0] == 0.0);
      CHECK(br.multiplier->eta_H[0] == 0.0);
      CHECK(br.multiplier->eta_G[0] == doctest::Approx(1.0));
      check_multiplier_certificate(p41, kOrigin, s41, *br.multiplier);
    }
  CHECK(found);
}

TEST_CASE("free parts cannot cancel into a zero multiplier") {
  // One equality whose gradient is nonzero: a split mu+ = mu- would satisfy
  // stationarity trivially, but it is not a nonzero multiplier.
  const MpvcProblem p = parse_problem(
      "[vars] x1 x2\n[objective] x1\n[h]\nx1\n[vc]\nG: -1 ; H: 1 + x2\n");
  CHECK(check_gmfcq(p, kOrigin, classify(p, kOrigin)).status == CqStatus::Certified);
  // Two parallel equalities do admit one.
  const MpvcProblem q = parse_problem(
      "[vars] x1 x2\n[objective] x1\n[h]\nx1\n2*x1\n[vc]\nG: -1 ; H: 1 + x2\n");
  const IndexSets sq = classify(q, kOrigin);
  const CqVerdict v = check_gmfcq(q, kOrigin, sq);
  REQUIRE(v.status == CqStatus::Refuted);
  check_multiplier_certificate(q, kOrigin, sq, std::get<MultiplierVector>(v.certificate));
}

TEST_CASE("GMFCQ on the fixtures") {
  const MpvcProblem p21 = fixture("ex21.mpvc");
  CHECK(check_gmfcq(p21, kOrigin, classify(p21, kOrigin)).status == CqStatus::Certified);
  const MpvcProblem p22 = fixture("ex22.mpvc");
  CHECK(check_gmfcq(p22, kOrigin, classify(p22, kOrigin)).status == CqStatus::Refuted);
  const MpvcProblem p41 = fixture("ex41.mpvc");
  CHECK(check_gmfcq(p41, kOrigin, classify(p41, kOrigin)).status == CqStatus::Refuted);
}

TEST_CASE("branch cap") {
  std::string text = "[vars] x1\n[objective] x1\n[vc]\n";
  for (int i = 0; i < 17; ++i) text += "G: x1 ; H: x1\n";
  const MpvcProblem p = parse_problem(text);
  const std::vector<double> x{0.0};
  CHECK_THROWS_AS(check_gmfcq(p, x, classify(p, x)), InvalidArgument);
  CHECK_NOTHROW(check_gmfcq(p, x, classify(p, x), 17));
}

TEST_CASE("multiplier rays are invariant under constraint reordering") {
  const MpvcProblem a = parse_problem(
      "[vars] x1 x2\n[objective] x1\n[g]\nx1\nx2\n[vc]\nG: -x1 ; H: x2\n");
  const MpvcProblem b = parse_problem(
      "[vars] x1 x2\n[objective] x1\n[g]\nx2\nx1\n[vc]\nG: -x1 ; H: x2\n");
  auto rays = [](const MpvcProblem& p, bool swap) {
    std::vector<std::vector<double>> out;
    for (const auto& br : enumerate_multiplier_branches(p, kOrigin, classify(p, kOrigin))) {
      if (!br.multiplier) continue;
      auto m = *br.multiplier;
      if (swap) std::swap(m.lambda[0], m.lambda[1]);
      out.push_back({m.lambda[0], m.lambda[1], m.eta_H[0], m.eta_G[0]});
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  const auto ra = rays(a, false), rb = rays(b, true);
  REQUIRE(ra.size() == rb.size());
  for (std::size_t i = 0; i < ra.size(); ++i)
    for (std::size_t k = 0; k < 4; ++k) CHECK(ra[i][k] == doctest::Approx(rb[i][k]));
}

TEST_CASE("branch multipliers lie in the limiting normal cone of the pair") {
  // With xi = -eta_H and zeta = eta_G at the transposed point (H, G), the
  // branch sign patterns coincide with the normal cone branches.
  GeneratorConfig gen;
  int seen = 0;
  for (std::size_t k = 0; k < 80; ++k) {
    const MpvcProblem p = generate_instance(gen, 23, k);
    const std::vector<double> x(p.dim(), 0.0);
    const IndexSets s = classify(p, x);
    for (const auto& m : candidate_multipliers(p, x, s)) {
      ++seen;
      check_multiplier_certificate(p, x, s, m);
      for (std::size_t i = 0; i < p.q(); ++i) {
        const OmegaPoint gh{p.vc()[i].G.value(x), p.vc()[i].H.value(x)};
        CHECK(normal_cone_omega(transpose(gh)).contains(-m.eta_H[i], m.eta_G[i], 0.0));
      }
    }
  }
  CHECK(seen > 20);
}

TEST_CASE("pseudonormality refuter") {
  const MpvcProblem p22 = fixture("ex22.mpvc");
  CHECK(refute_pseudonormality(p22, kOrigin, classify(p22, kOrigin)).status ==
        CqStatus::NoViolationFound);

  const MpvcProblem p21 = fixture("ex21.mpvc");
  const CqVerdict v21 = refute_pseudonormality(p21, kOrigin, classify(p21, kOrigin));
  CHECK(v21.status == CqStatus::Certified);
  CHECK(std::get<DowngradeCertificate>(v21.certificate).from == CqName::Gmfcq);

  const MpvcProblem p41 = fixture("ex41.mpvc");
  const CqVerdict v41 = refute_pseudonormality(p41, kOrigin, classify(p41, kOrigin));
  REQUIRE(v41.status == CqStatus::Refuted);
  const auto& w = std::get<SequenceWitness>(v41.certificate);
  CHECK(w.multiplier.eta_G[0] == doctest::Approx(1.0));
  CHECK(w.direction == std::vector<double>{1.0, 0.0});
}

TEST_CASE("quasinormality refuter") {
  const MpvcProblem p41 = fixture("ex41.mpvc");
  const IndexSets s41 = classify(p41, kOrigin);
  const CqVerdict v = refute_quasinormality(p41, kOrigin, s41);
  REQUIRE(v.status == CqStatus::Refuted);
  const auto& w = std::get<SequenceWitness>(v.certificate);
  check_multiplier_certificate(p41, kOrigin, s41, w.multiplier);
  REQUIRE(!w.ts.empty());
  for (double t : w.ts) {
    CHECK(t <= 1e-3);
    const std::vector<double> y{t * w.direction[0], t * w.direction[1]};
    CHECK(quasinormal_signs_hold(p41, y, w.multiplier, 1e-14));
  }

  const MpvcProblem p22 = fixture("ex22.mpvc");
  CHECK(refute_quasinormality(p22, kOrigin, classify(p22, kOrigin)).status ==
        CqStatus::NoViolationFound);
  const MpvcProblem p21 = fixture("ex21.mpvc");
  CHECK(refute_quasinormality(p21, kOrigin, classify(p21, kOrigin)).status == CqStatus::Certified);
}

TEST_CASE("search directions are deterministic unit vectors") {
  SearchConfig cfg;
  for (std::size_t n : {1u, 2u, 3u}) {
    const auto a = search_directions(n, cfg), b = search_directions(n, cfg);
    CHECK(a == b);
    for (const auto& d : a) {
      double s = 0.0;
      for (double v : d) s += v * v;
      CHECK(s == doctest::Approx(1.0));
    }
  }
  CHECK(search_directions(2, cfg).size() == 4 + 64 + 16);
}

TEST_CASE("chain violations") {
  auto verdict = [](CqName n, CqStatus s) {
    CqVerdict v;
    v.name = n;
    v.status = s;
    return v;
  };
  std::vector<CqVerdict> ok{verdict(CqName::Licq, CqStatus::Refuted),
                            verdict(CqName::Mfcq, CqStatus::Refuted),
                            verdict(CqName::Gmfcq, CqStatus::Certified),
                            verdict(CqName::Pseudonormality, CqStatus::Certified),
                            verdict(CqName::Quasinormality, CqStatus::Certified)};
  CHECK(chain_violations(ok).empty());
  ok[4].status = CqStatus::Refuted;
  const auto bad = chain_violations(ok);
  CHECK(bad.size() == 2);
  CHECK(bad[0].stronger == CqName::Gmfcq);
  CHECK(bad[0].weaker == CqName::Quasinormality);
}
