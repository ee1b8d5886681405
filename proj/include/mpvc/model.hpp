#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mpvc/expr.hpp"

namespace mpvc {

/// A continuously differentiable constraint function with cached partials.
class SmoothFunction {
 public:
  SmoothFunction(Expr expr, std::size_t dim);

  const Expr& expr() const { return expr_; }
  double value(std::span<const double> x) const { return expr_.eval(x); }
  std::vector<double> grad(std::span<const double> x) const { return eval_all(partials_, x); }

 private:
  Expr expr_;
  std::vector<Expr> partials_;
};

struct VanishingPair {
  SmoothFunction G;
  SmoothFunction H;
};

/// min f(x) s.t. g(x) <= 0, h(x) = 0, H(x) >= 0, G(x) H(x) <= 0.
class MpvcProblem {
 public:
  MpvcProblem(std::string name, VarSpace vars, Expr objective, std::vector<Expr> g,
              std::vector<Expr> h, std::vector<std::pair<Expr, Expr>> vc_pairs);

  const std::string& name() const { return name_; }
  const VarSpace& vars() const { return vars_; }
  std::size_t dim() const { return vars_.dim(); }
  std::size_t m() const { return g_.size(); }
  std::size_t l() const { return h_.size(); }
  std::size_t q() const { return vc_.size(); }

  const Expr& objective() const { return objective_; }
  const std::vector<SmoothFunction>& g() const { return g_; }
  const std::vector<SmoothFunction>& h() const { return h_; }
  const std::vector<VanishingPair>& vc() const { return vc_; }

  double f(std::span<const double> x) const;
  /// Throws EvalError if x does not have dim() entries.
  void check_dim(std::span<const double> x) const;

  /// The same problem with g and h dropped (for the l1 penalty).
  MpvcProblem without_g_h() const;
  /// Text in the problem file format.
  std::string to_text() const;

 private:
  std::string name_;
  VarSpace vars_;
  Expr objective_;
  std::vector<SmoothFunction> g_;
  std::vector<SmoothFunction> h_;
  std::vector<VanishingPair> vc_;
};

MpvcProblem parse_problem(std::string_view text);
MpvcProblem load_problem(const std::filesystem::path& path);

inline constexpr double kDefaultTolActive = 1e-8;

/// Active-index partition at a feasible point. Indices are 0-based.
struct IndexSets {
  std::vector<std::size_t> active_g;    // I_g
  std::vector<std::size_t> plus;        // I_+
  std::vector<std::size_t> zero;        // I_0
  std::vector<std::size_t> plus_zero;   // I_+0
  std::vector<std::size_t> plus_minus;  // I_+-
  std::vector<std::size_t> zero_plus;   // I_0+
  std::vector<std::size_t> zero_minus;  // I_0-
  std::vector<std::size_t> zero_zero;   // I_00
  double tol_active = kDefaultTolActive;

  friend bool operator==(const IndexSets&, const IndexSets&) = default;
};

/// Which of the five vanishing-pair classes index i belongs to.
enum class PairClass { PlusZero, PlusMinus, ZeroPlus, ZeroMinus, ZeroZero };

PairClass pair_class(const IndexSets& sets, std::size_t i);
bool contains(const std::vector<std::size_t>& set, std::size_t i);

struct Residuals {
  std::vector<double> g_plus;
  std::vector<double> h_abs;
  std::vector<double> vc_dist;
  double total = 0.0;
};

Residuals residuals(const MpvcProblem& prob, std::span<const double> x);
/// Sum of all residual entries without materializing the vectors.
double residual_total(const MpvcProblem& prob, std::span<const double> x);
bool is_feasible(const MpvcProblem& prob, std::span<const double> x, double tol);

/// Throws InfeasiblePointError unless x is feasible up to tol_active.
IndexSets classify(const MpvcProblem& prob, std::span<const double> x,
                   double tol_active = kDefaultTolActive);

}  // namespace mpvc
