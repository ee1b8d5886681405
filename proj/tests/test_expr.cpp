#include <doctest.h>

#include <cmath>
#include <random>

#include "mpvc/generator.hpp"
#include "oracles.hpp"

using namespace mpvc;

namespace {
const VarSpace kXY({"x1", "x2"});
}

TEST_CASE("parse builds the expected trees") {
  const Expr sum = parse_expr("x1^2 + x2^2", kXY);
  const Expr want = Expr::add(Expr::pow(Expr::variable(0), 2), Expr::pow(Expr::variable(1), 2));
  CHECK(structurally_equal(sum, want));

  const Expr zero = parse_expr("0", kXY);
  CHECK(zero.kind() == ExprKind::Constant);
  CHECK(zero.value() == 0.0);

  const Expr cubic = parse_expr("x1*(x1^2 - x2^2)", kXY);
  const Expr cubic_want = Expr::mul(
      Expr::variable(0),
      Expr::sub(Expr::pow(Expr::variable(0), 2), Expr::pow(Expr::variable(1), 2)));
  CHECK(structurally_equal(cubic, cubic_want));
}

TEST_CASE("unary minus binds looser than power") {
  const Expr e = parse_expr("-x1^2", kXY);
  CHECK(e.kind() == ExprKind::Neg);
  CHECK(e.eval(std::vector<double>{3.0, 0.0}) == -9.0);
}

TEST_CASE("a minus sign on a bare literal makes a negative constant") {
  CHECK(parse_expr("-2.5", kXY).kind() == ExprKind::Constant);
  CHECK(parse_expr("-2.5", kXY).value() == -2.5);
  CHECK(parse_expr("-(2.5)", kXY).kind() == ExprKind::Neg);
  CHECK(parse_expr("-2^2", kXY).kind() == ExprKind::Neg);
  CHECK(parse_expr("-2^2", kXY).eval(std::vector<double>{0.0, 0.0}) == -4.0);
}

TEST_CASE("numbers with fractions and exponents") {
  CHECK(parse_expr("1.5e2", kXY).value() == 150.0);
  CHECK(parse_expr(".25", kXY).value() == 0.25);
}

TEST_CASE("evaluation") {
  CHECK(parse_expr("x1 - x2", kXY).eval(std::vector<double>{0.0, 0.0}) == 0.0);
  CHECK(parse_expr("7.25", kXY).eval(std::vector<double>{1.0, -4.0}) == 7.25);
  CHECK(parse_expr("-x1*x2", kXY).eval(std::vector<double>{2.0, 3.0}) == -6.0);
  CHECK(parse_expr("min(x1, x2, 0)", kXY).eval(std::vector<double>{2.0, 3.0}) == 0.0);
  CHECK(parse_expr("max(x1, x2)", kXY).eval(std::vector<double>{2.0, 3.0}) == 3.0);
  CHECK(parse_expr("abs(x1 - x2)", kXY).eval(std::vector<double>{2.0, 3.0}) == 1.0);
  CHECK(parse_expr("x1 / x2", kXY).eval(std::vector<double>{1.0, 4.0}) == 0.25);
  CHECK(parse_expr("x1^0", kXY).eval(std::vector<double>{0.0, 0.0}) == 1.0);
}

TEST_CASE("evaluation errors") {
  CHECK_THROWS_AS(parse_expr("x1 / x2", kXY).eval(std::vector<double>{1.0, 0.0}), EvalError);
  CHECK_THROWS_AS(parse_expr("x2", kXY).eval(std::vector<double>{1.0}), EvalError);
}

TEST_CASE("parse errors report position") {
  CHECK_THROWS_AS(parse_expr("x3 + 1", kXY), ParseError);
  CHECK_THROWS_AS(parse_expr("x1^2.5", kXY), ParseError);
  CHECK_THROWS_AS(parse_expr("x1^-1", kXY), ParseError);
  CHECK_THROWS_AS(parse_expr("x1 +", kXY), ParseError);
  CHECK_THROWS_AS(parse_expr("(x1", kXY), ParseError);
  CHECK_THROWS_AS(parse_expr("abs(x1, x2)", kXY), ParseError);
  ParseOptions smooth;
  smooth.allow_nonsmooth = false;
  CHECK_THROWS_AS(parse_expr("abs(x1)", kXY, smooth), ParseError);
  try {
    parse_expr("x1 + * x2", kXY);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() == 6);
  }
}

TEST_CASE("variable names are validated") {
  CHECK_THROWS_AS(VarSpace({}), InvalidArgument);
  CHECK_THROWS_AS(VarSpace({"x", "x"}), InvalidArgument);
  CHECK_THROWS_AS(VarSpace({"abs"}), InvalidArgument);
  CHECK_THROWS_AS(VarSpace({"1x"}), InvalidArgument);
  CHECK(kXY.index_of("x2") == 1u);
  CHECK(!kXY.index_of("x3"));
}

TEST_CASE("gradients") {
  const std::vector<double> origin{0.0, 0.0};
  CHECK(parse_expr("x1 - x2", kXY).grad(origin) == std::vector<double>{1.0, -1.0});
  CHECK(parse_expr("x1*(x1^2 - x2^2)", kXY).grad(origin) == std::vector<double>{0.0, 0.0});
  CHECK(parse_expr("4", kXY).grad(std::vector<double>{1.0, 2.0}) == std::vector<double>{0.0, 0.0});
  CHECK(parse_expr("x1^3*x2", kXY).grad(std::vector<double>{2.0, 3.0}) ==
        std::vector<double>{36.0, 8.0});
  CHECK(parse_expr("x1 / x2", kXY).grad(std::vector<double>{1.0, 2.0}) ==
        std::vector<double>{0.5, -0.25});
}

TEST_CASE("nonsmooth derivative conventions") {
  const std::vector<double> origin{0.0, 0.0};
  CHECK(parse_expr("abs(x1)", kXY).grad(origin)[0] == 0.0);
  CHECK(parse_expr("abs(x1)", kXY).grad(std::vector<double>{-2.0, 0.0})[0] == -1.0);
  // Ties select the first listed argument.
  CHECK(parse_expr("min(x1, x2)", kXY).grad(origin) == std::vector<double>{1.0, 0.0});
  CHECK(parse_expr("max(x2, x1)", kXY).grad(origin) == std::vector<double>{0.0, 1.0});
  CHECK(!parse_expr("max(x2, x1)", kXY).is_smooth());
}

TEST_CASE("constant folding keeps derivatives small") {
  const Expr d = parse_expr("3*x1 + 2", kXY).derivative(0);
  CHECK(d.kind() == ExprKind::Constant);
  CHECK(d.value() == 3.0);
  CHECK(parse_expr("x2^2", kXY).derivative(0).kind() == ExprKind::Constant);
}

TEST_CASE("printing reparses to the same tree") {
  for (const char* s : {"x1^2 + x2^2", "-x1^2", "(-x1)^2", "x1 - (x2 - 1)", "x1 / (x2 * x1)",
                        "min(x1, -2.5, max(x2, 0))", "abs(x1 - x2)^3", "-(x1 + x2)", "1e-07 * x1",
                        "x1 - -x2", "2 ^ 3", "(-3)^2", "-(3)", "x1*-0"}) {
    const Expr e = parse_expr(s, kXY);
    const Expr again = parse_expr(e.to_string(kXY), kXY);
    CHECK_MESSAGE(structurally_equal(e, again), s, " printed as ", e.to_string(kXY));
  }
  // Built trees, including both spellings of a negative number.
  for (const Expr& e : {Expr::constant(-1.25), Expr::neg(Expr::constant(1.25)),
                        Expr::pow(Expr::constant(-2.0), 2), Expr::neg(Expr::constant(0.0)),
                        Expr::min({Expr::constant(-1.0), Expr::variable(1)})}) {
    const Expr again = parse_expr(e.to_string(kXY), kXY);
    CHECK_MESSAGE(structurally_equal(e, again), "printed as ", e.to_string(kXY));
  }
}

TEST_CASE("generated smooth expressions match finite differences") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> box(-2.0, 2.0);
  ExprGenConfig cfg;
  int checked = 0;
  for (int k = 0; k < 300; ++k) {
    const std::size_t dim = 1 + k % 3;
    const Expr e = random_expr(rng, dim, cfg);
    std::vector<double> x(dim);
    for (double& v : x) v = box(rng);
    const auto g = e.gradient(dim);
    const auto fd = oracle::fd_gradient([&](const std::vector<double>& y) { return e.eval(y); }, x, 1e-6);
    for (std::size_t i = 0; i < dim; ++i) {
      const double sym = g[i].eval(x);
      CHECK(std::fabs(sym - fd[i]) <= 1e-5 * (1.0 + std::fabs(sym)));
    }
    ++checked;
  }
  CHECK(checked == 300);
}
