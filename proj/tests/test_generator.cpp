#include <doctest.h>

#include <cmath>
#include <random>

#include "mpvc/generator.hpp"

using namespace mpvc;

TEST_CASE("instances are feasible at the origin") {
  GeneratorConfig cfg;
  std::size_t biactive = 0;
  for (std::size_t k = 0; k < 100; ++k) {
    const MpvcProblem p = generate_instance(cfg, 7, k);
    CHECK(p.dim() >= 1);
    CHECK(p.dim() <= cfg.max_dim);
    CHECK(p.q() >= 1);
    CHECK(p.l() + 1 <= p.dim());
    const std::vector<double> x(p.dim(), 0.0);
    REQUIRE(is_feasible(p, x, 1e-12));
    const IndexSets s = classify(p, x);
    if (k % 2 == 0) CHECK(!s.zero_zero.empty());
    if (!s.zero_zero.empty()) ++biactive;
  }
  CHECK(biactive >= 50);
}

TEST_CASE("instances are reproducible and independent of position") {
  GeneratorConfig cfg;
  CHECK(generate_instance_text(cfg, 7, 13) == generate_instance_text(cfg, 7, 13));
  CHECK(generate_instance_text(cfg, 7, 13) != generate_instance_text(cfg, 8, 13));
  CHECK(generate_instance(cfg, 7, 13).to_text() ==
        parse_problem(generate_instance_text(cfg, 7, 13)).to_text());
  auto a = instance_rng(7, 4), b = instance_rng(7, 4), c = instance_rng(7, 5);
  CHECK(a() == b());
  CHECK(a() != c());
}

TEST_CASE("random expressions respect the configuration") {
  std::mt19937_64 rng(11);
  ExprGenConfig smooth;
  smooth.division = false;
  for (int k = 0; k < 200; ++k) {
    const Expr e = random_expr(rng, 3, smooth);
    CHECK(e.is_smooth());
    const std::string s = e.to_string(VarSpace({"x1", "x2", "x3"}));
    CHECK(s.find('/') == std::string::npos);
    const std::vector<double> x{0.1, -0.2, 0.3};
    CHECK(std::isfinite(e.eval(x)));
  }
  ExprGenConfig rough;
  rough.nonsmooth = true;
  bool any_nonsmooth = false;
  for (int k = 0; k < 300; ++k) any_nonsmooth |= !random_expr(rng, 2, rough).is_smooth();
  CHECK(any_nonsmooth);
}
