#include <doctest.h>

#include <random>

#include "mpvc/penalty.hpp"
#include "oracles.hpp"

using namespace mpvc;

namespace {
MpvcProblem ex22() { return load_problem(std::string(MPVC_FIXTURE_DIR) + "/ex22.mpvc"); }
}  // namespace

TEST_CASE("dist_omega closed form") {
  CHECK(dist_omega({-1.0, 2.0}) == 0.0);
  CHECK(dist_omega({3.0, -2.0}) == 2.0);
  CHECK(dist_omega({2.0, 1.0}) == 1.0);
  CHECK(dist_omega({1.0, 1.0}) == 1.0);
  CHECK(dist_omega({5.0, 0.0}) == 0.0);
}

TEST_CASE("dist_omega matches the grid projection") {
  CHECK(oracle::grid_dist_omega(3.0, -2.0, 10.0, 1e-3) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(oracle::grid_dist_omega(2.0, 1.0, 10.0, 1e-3) == doctest::Approx(1.0).epsilon(1e-9));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> box(-5.0, 5.0);
  for (int k = 0; k < 500; ++k) {
    const double a = box(rng), b = box(rng);
    CHECK(std::fabs(dist_omega({a, b}) - oracle::grid_dist_omega(a, b, 6.0, 1e-3)) <= 2e-3);
  }
}

TEST_CASE("zero distance exactly on the set") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> box(-5.0, 5.0);
  for (int k = 0; k < 100000; ++k) {
    // Snap a third of the samples onto the axes so boundary points occur.
    double a = box(rng), b = box(rng);
    if (k % 3 == 1) b = 0.0;
    if (k % 3 == 2) a = 0.0;
    REQUIRE((dist_omega({a, b}) == 0.0) == in_omega({a, b}, 0.0));
  }
}

TEST_CASE("tailored penalty") {
  const MpvcProblem p = ex22();
  const std::vector<double> origin{0.0, 0.0};
  for (double alpha : {0.0, 1.0, 100.0}) CHECK(penalty_tailored(p, origin, alpha).total == 0.0);
  const PenaltyValue v = penalty_tailored(p, std::vector<double>{-0.5, 0.5}, 1.0);
  CHECK(v.objective == 0.5);
  CHECK(v.violation == 0.5);
  CHECK(v.total == 1.0);
  CHECK_THROWS_AS(penalty_tailored(p, origin, -1.0), InvalidArgument);

  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> box(-2.0, 2.0);
  for (int k = 0; k < 200; ++k) {
    const std::vector<double> x{box(rng), box(rng)};
    CHECK(penalty_tailored(p, x, 0.0).total == p.f(x));
    const double v1 = penalty_tailored(p, x, 1.0).total;
    const double v2 = penalty_tailored(p, x, 2.0).total;
    if (residual_total(p, x) > 0.0) CHECK(v2 > v1);
    else CHECK(v2 == v1);
  }
}

TEST_CASE("l1 penalty") {
  const MpvcProblem p = ex22().without_g_h();
  CHECK(penalty_l1(p, std::vector<double>{1.0, 1.0}, 2.0).total == 2.0);
  CHECK(penalty_l1(p, std::vector<double>{1.0, -1.0}, 1.0).total == 4.0);
  CHECK_THROWS_AS(penalty_l1(ex22(), std::vector<double>{0.0, 0.0}, 1.0), InvalidArgument);
  CHECK_THROWS_AS(penalty_l1(p, std::vector<double>{0.0, 0.0}, -1.0), InvalidArgument);
  // Feasible points: both penalties reduce to f.
  for (const std::vector<double>& x : {std::vector<double>{0.0, 2.0}, std::vector<double>{-3.0, 0.0}}) {
    CHECK(penalty_l1(p, x, 3.0).total == p.f(x));
    CHECK(penalty_tailored(p, x, 3.0).total == p.f(x));
  }
}
