#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mpvc/errors.hpp"

namespace mpvc {

using Point = std::vector<double>;

/// Ordered, unique variable names. Immutable after construction.
class VarSpace {
 public:
  explicit VarSpace(std::vector<std::string> names);

  std::size_t dim() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  std::optional<std::size_t> index_of(std::string_view name) const;

  friend bool operator==(const VarSpace&, const VarSpace&) = default;

 private:
  std::vector<std::string> names_;
};

enum class ExprKind {
  Constant,
  Variable,
  Neg,
  Abs,
  Add,
  Sub,
  Mul,
  Div,
  Pow,
  Min,
  Max,
  // Only produced by differentiation of abs/min/max; never by the parser.
  Sign,
  SelectMin,
  SelectMax,
};

/// Immutable expression tree with shared structure.
///
/// SelectMin/SelectMax carry 2k children: k arguments followed by their k
/// derivatives. They evaluate to the derivative of the first argument that
/// attains the min (max), which is the tie convention for nonsmooth gradients.
class Expr {
 public:
  static Expr constant(double value);
  static Expr variable(std::size_t index);
  static Expr neg(Expr a);
  static Expr abs(Expr a);
  static Expr add(Expr a, Expr b);
  static Expr sub(Expr a, Expr b);
  static Expr mul(Expr a, Expr b);
  static Expr div(Expr a, Expr b);
  static Expr pow(Expr base, unsigned exponent);
  static Expr min(std::vector<Expr> args);
  static Expr max(std::vector<Expr> args);

  ExprKind kind() const;
  double value() const;          // Constant
  std::size_t index() const;     // Variable
  unsigned exponent() const;     // Pow
  const std::vector<Expr>& children() const;

  /// False if the tree contains abs, min or max.
  bool is_smooth() const;
  /// One past the largest variable index referenced (0 for constants).
  std::size_t arity() const;

  double eval(std::span<const double> x) const;

  /// Symbolic partial derivative with constant folding.
  Expr derivative(std::size_t var) const;
  std::vector<Expr> gradient(std::size_t dim) const;
  std::vector<double> grad(std::span<const double> x) const;

  /// Text in the expression grammar; reparses to an identical tree.
  std::string to_string(const VarSpace& vars) const;

  friend bool structurally_equal(const Expr& a, const Expr& b);

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Expr make(ExprKind kind, std::vector<Expr> children, double value = 0.0,
                   std::size_t index = 0, unsigned exponent = 0);

  std::shared_ptr<const Node> node_;
};

struct ParseOptions {
  /// abs/min/max are accepted only where this is set (objectives).
  bool allow_nonsmooth = true;
  /// Line offset added to reported positions, for expressions embedded in a file.
  std::size_t line = 1;
  std::size_t column = 1;
};

Expr parse_expr(std::string_view text, const VarSpace& vars,
                const ParseOptions& options = {});

/// Gradient evaluated from precomputed derivative expressions.
std::vector<double> eval_all(const std::vector<Expr>& exprs,
                             std::span<const double> x);

}  // namespace mpvc
