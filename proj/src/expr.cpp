#include "mpvc/expr.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <set>

namespace mpvc {

namespace {

bool is_reserved(std::string_view name) {
  return name == "abs" || name == "min" || name == "max";
}

bool is_identifier(std::string_view name) {
  if (name.empty() || !(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_'))
    return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

}  // namespace

VarSpace::VarSpace(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.empty()) throw InvalidArgument("variable list must not be empty");
  std::set<std::string_view> seen;
  for (const auto& n : names_) {
    if (!is_identifier(n)) throw InvalidArgument("invalid variable name '" + n + "'");
    if (is_reserved(n)) throw InvalidArgument("'" + n + "' is a reserved function name");
    if (!seen.insert(n).second) throw InvalidArgument("duplicate variable name '" + n + "'");
  }
}

std::optional<std::size_t> VarSpace::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Nodes

struct Expr::Node {
  ExprKind kind;
  double value = 0.0;
  std::size_t index = 0;
  unsigned exponent = 0;
  std::vector<Expr> children;
  bool smooth = true;
  std::size_t arity = 0;
};

Expr Expr::make(ExprKind kind, std::vector<Expr> children, double value,
                std::size_t index, unsigned exponent) {
  auto node = std::make_shared<Node>();
  node->kind = kind;
  node->value = value;
  node->index = index;
  node->exponent = exponent;
  node->smooth = !(kind == ExprKind::Abs || kind == ExprKind::Min ||
                   kind == ExprKind::Max || kind == ExprKind::Sign ||
                   kind == ExprKind::SelectMin || kind == ExprKind::SelectMax);
  node->arity = kind == ExprKind::Variable ? index + 1 : 0;
  for (const auto& c : children) {
    node->smooth = node->smooth && c.node_->smooth;
    node->arity = std::max(node->arity, c.node_->arity);
  }
  node->children = std::move(children);
  return Expr(std::move(node));
}

Expr Expr::constant(double value) {
  if (!std::isfinite(value)) throw InvalidArgument("constants must be finite");
  return make(ExprKind::Constant, {}, value);
}
Expr Expr::variable(std::size_t index) { return make(ExprKind::Variable, {}, 0.0, index); }
Expr Expr::neg(Expr a) { return make(ExprKind::Neg, {std::move(a)}); }
Expr Expr::abs(Expr a) { return make(ExprKind::Abs, {std::move(a)}); }
Expr Expr::add(Expr a, Expr b) { return make(ExprKind::Add, {std::move(a), std::move(b)}); }
Expr Expr::sub(Expr a, Expr b) { return make(ExprKind::Sub, {std::move(a), std::move(b)}); }
Expr Expr::mul(Expr a, Expr b) { return make(ExprKind::Mul, {std::move(a), std::move(b)}); }
Expr Expr::div(Expr a, Expr b) { return make(ExprKind::Div, {std::move(a), std::move(b)}); }
Expr Expr::pow(Expr base, unsigned exponent) {
  return make(ExprKind::Pow, {std::move(base)}, 0.0, 0, exponent);
}
Expr Expr::min(std::vector<Expr> args) {
  if (args.empty()) throw InvalidArgument("min needs at least one argument");
  return make(ExprKind::Min, std::move(args));
}
Expr Expr::max(std::vector<Expr> args) {
  if (args.empty()) throw InvalidArgument("max needs at least one argument");
  return make(ExprKind::Max, std::move(args));
}

ExprKind Expr::kind() const { return node_->kind; }
double Expr::value() const { return node_->value; }
std::size_t Expr::index() const { return node_->index; }
unsigned Expr::exponent() const { return node_->exponent; }
const std::vector<Expr>& Expr::children() const { return node_->children; }
bool Expr::is_smooth() const { return node_->smooth; }
std::size_t Expr::arity() const { return node_->arity; }

bool structurally_equal(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.kind != y.kind || x.children.size() != y.children.size()) return false;
  switch (x.kind) {
    case ExprKind::Constant:
      if (x.value != y.value) return false;
      break;
    case ExprKind::Variable:
      if (x.index != y.index) return false;
      break;
    case ExprKind::Pow:
      if (x.exponent != y.exponent) return false;
      break;
    default:
      break;
  }
  for (std::size_t i = 0; i < x.children.size(); ++i)
    if (!structurally_equal(x.children[i], y.children[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

double ipow(double base, unsigned k) {
  double r = 1.0;
  while (k) {
    if (k & 1u) r *= base;
    base *= base;
    k >>= 1u;
  }
  return r;
}

}  // namespace

double Expr::eval(std::span<const double> x) const {
  const auto& n = *node_;
  const auto& c = n.children;
  switch (n.kind) {
    case ExprKind::Constant:
      return n.value;
    case ExprKind::Variable:
      if (n.index >= x.size())
        throw EvalError("point has dimension " + std::to_string(x.size()) +
                        " but expression references variable " +
                        std::to_string(n.index + 1));
      return x[n.index];
    case ExprKind::Neg:
      return -c[0].eval(x);
    case ExprKind::Abs:
      return std::fabs(c[0].eval(x));
    case ExprKind::Sign: {
      const double v = c[0].eval(x);
      return static_cast<double>((v > 0.0) - (v < 0.0));
    }
    case ExprKind::Add:
      return c[0].eval(x) + c[1].eval(x);
    case ExprKind::Sub:
      return c[0].eval(x) - c[1].eval(x);
    case ExprKind::Mul:
      return c[0].eval(x) * c[1].eval(x);
    case ExprKind::Div: {
      const double num = c[0].eval(x);
      const double den = c[1].eval(x);
      if (den == 0.0) throw EvalError("division by zero");
      return num / den;
    }
    case ExprKind::Pow:
      return ipow(c[0].eval(x), n.exponent);
    case ExprKind::Min: {
      double best = c[0].eval(x);
      for (std::size_t i = 1; i < c.size(); ++i) best = std::min(best, c[i].eval(x));
      return best;
    }
    case ExprKind::Max: {
      double best = c[0].eval(x);
      for (std::size_t i = 1; i < c.size(); ++i) best = std::max(best, c[i].eval(x));
      return best;
    }
    case ExprKind::SelectMin:
    case ExprKind::SelectMax: {
      const std::size_t k = c.size() / 2;
      std::size_t pick = 0;
      double best = c[0].eval(x);
      for (std::size_t i = 1; i < k; ++i) {
        const double v = c[i].eval(x);
        const bool better = n.kind == ExprKind::SelectMin ? v < best : v > best;
        if (better) {
          best = v;
          pick = i;
        }
      }
      return c[k + pick].eval(x);
    }
  }
  return 0.0;
}

std::vector<double> eval_all(const std::vector<Expr>& exprs, std::span<const double> x) {
  std::vector<double> out;
  out.reserve(exprs.size());
  for (const auto& e : exprs) out.push_back(e.eval(x));
  return out;
}

// ---------------------------------------------------------------------------
// Differentiation

namespace {

bool is_const(const Expr& e, double v) {
  return e.kind() == ExprKind::Constant && e.value() == v;
}
bool is_const(const Expr& e) { return e.kind() == ExprKind::Constant; }

Expr fold_neg(const Expr& a) {
  if (is_const(a)) return Expr::constant(-a.value());
  if (a.kind() == ExprKind::Neg) return a.children()[0];
  return Expr::neg(a);
}

Expr fold_add(const Expr& a, const Expr& b) {
  if (is_const(a) && is_const(b)) return Expr::constant(a.value() + b.value());
  if (is_const(a, 0.0)) return b;
  if (is_const(b, 0.0)) return a;
  return Expr::add(a, b);
}

Expr fold_sub(const Expr& a, const Expr& b) {
  if (is_const(a) && is_const(b)) return Expr::constant(a.value() - b.value());
  if (is_const(b, 0.0)) return a;
  if (is_const(a, 0.0)) return fold_neg(b);
  return Expr::sub(a, b);
}

Expr fold_mul(const Expr& a, const Expr& b) {
  if (is_const(a) && is_const(b)) return Expr::constant(a.value() * b.value());
  if (is_const(a, 0.0) || is_const(b, 0.0)) return Expr::constant(0.0);
  if (is_const(a, 1.0)) return b;
  if (is_const(b, 1.0)) return a;
  return Expr::mul(a, b);
}

Expr fold_div(const Expr& a, const Expr& b) {
  if (is_const(a, 0.0)) return Expr::constant(0.0);
  if (is_const(b, 1.0)) return a;
  return Expr::div(a, b);
}

Expr fold_pow(const Expr& a, unsigned k) {
  if (k == 0) return Expr::constant(1.0);
  if (k == 1) return a;
  if (is_const(a)) return Expr::constant(ipow(a.value(), k));
  return Expr::pow(a, k);
}

}  // namespace

Expr Expr::derivative(std::size_t var) const {
  const auto& n = *node_;
  const auto& c = n.children;
  switch (n.kind) {
    case ExprKind::Constant:
    case ExprKind::Sign:
      return constant(0.0);
    case ExprKind::Variable:
      return constant(n.index == var ? 1.0 : 0.0);
    case ExprKind::Neg:
      return fold_neg(c[0].derivative(var));
    case ExprKind::Abs: {
      // d|u| = sign(u) du, with sign(0) = 0.
      Expr du = c[0].derivative(var);
      if (is_const(du, 0.0)) return du;
      return fold_mul(make(ExprKind::Sign, {c[0]}), du);
    }
    case ExprKind::Add:
      return fold_add(c[0].derivative(var), c[1].derivative(var));
    case ExprKind::Sub:
      return fold_sub(c[0].derivative(var), c[1].derivative(var));
    case ExprKind::Mul:
      return fold_add(fold_mul(c[0].derivative(var), c[1]),
                      fold_mul(c[0], c[1].derivative(var)));
    case ExprKind::Div: {
      Expr du = c[0].derivative(var);
      Expr dv = c[1].derivative(var);
      if (is_const(dv, 0.0)) return fold_div(du, c[1]);
      return fold_div(fold_sub(fold_mul(du, c[1]), fold_mul(c[0], dv)),
                      fold_pow(c[1], 2));
    }
    case ExprKind::Pow: {
      const unsigned k = n.exponent;
      if (k == 0) return constant(0.0);
      Expr du = c[0].derivative(var);
      return fold_mul(fold_mul(constant(static_cast<double>(k)), fold_pow(c[0], k - 1)), du);
    }
    case ExprKind::Min:
    case ExprKind::Max: {
      std::vector<Expr> parts(c.begin(), c.end());
      bool all_zero = true;
      for (const auto& a : c) {
        parts.push_back(a.derivative(var));
        all_zero = all_zero && is_const(parts.back(), 0.0);
      }
      if (all_zero) return constant(0.0);
      return make(n.kind == ExprKind::Min ? ExprKind::SelectMin : ExprKind::SelectMax,
                  std::move(parts));
    }
    case ExprKind::SelectMin:
    case ExprKind::SelectMax: {
      const std::size_t k = c.size() / 2;
      std::vector<Expr> parts(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(k));
      for (std::size_t i = 0; i < k; ++i) parts.push_back(c[k + i].derivative(var));
      return make(n.kind, std::move(parts));
    }
  }
  return constant(0.0);
}

std::vector<Expr> Expr::gradient(std::size_t dim) const {
  std::vector<Expr> g;
  g.reserve(dim);
  for (std::size_t i = 0; i < dim; ++i) g.push_back(derivative(i));
  return g;
}

std::vector<double> Expr::grad(std::span<const double> x) const {
  if (arity() > x.size())
    throw EvalError("point has dimension " + std::to_string(x.size()) +
                    " but expression references variable " + std::to_string(arity()));
  return eval_all(gradient(x.size()), x);
}

// ---------------------------------------------------------------------------
// Printing

namespace {

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  // Prefer the shortest representation that round-trips.
  for (int prec = 1; prec <= 17; ++prec) {
    char shorter[32];
    std::snprintf(shorter, sizeof shorter, "%.*g", prec, v);
    if (std::strtod(shorter, nullptr) == v) return shorter;
  }
  return buf;
}

bool is_additive(ExprKind k) { return k == ExprKind::Add || k == ExprKind::Sub; }
bool is_multiplicative(ExprKind k) { return k == ExprKind::Mul || k == ExprKind::Div; }

struct Printer {
  const VarSpace& vars;

  std::string expr(const Expr& e) const {
    if (!is_additive(e.kind())) return term(e);
    const auto& c = e.children();
    const std::string op = e.kind() == ExprKind::Add ? " + " : " - ";
    std::string rhs = is_additive(c[1].kind()) ? "(" + expr(c[1]) + ")" : term(c[1]);
    return expr(c[0]) + op + rhs;
  }

  std::string term(const Expr& e) const {
    if (is_additive(e.kind())) return "(" + expr(e) + ")";
    if (!is_multiplicative(e.kind())) return factor(e);
    const auto& c = e.children();
    const std::string op = e.kind() == ExprKind::Mul ? "*" : "/";
    std::string rhs = (is_multiplicative(c[1].kind()) || is_additive(c[1].kind()))
                          ? "(" + expr(c[1]) + ")"
                          : factor(c[1]);
    return term(c[0]) + op + rhs;
  }

  std::string factor(const Expr& e) const {
    switch (e.kind()) {
      case ExprKind::Neg: {
        const Expr& a = e.children()[0];
        if (a.kind() == ExprKind::Pow) return "-" + factor(a);
        if (a.kind() == ExprKind::Constant) return "-(" + atom(a) + ")";
        if (is_atom(a)) return "-" + atom(a);
        return "-(" + expr(a) + ")";
      }
      case ExprKind::Pow:
        return atom(e.children()[0]) + "^" + std::to_string(e.exponent());
      default:
        return atom(e);
    }
  }

  static bool is_atom(const Expr& e) {
    switch (e.kind()) {
      case ExprKind::Constant:
        return e.value() >= 0.0 && !std::signbit(e.value());
      case ExprKind::Variable:
      case ExprKind::Abs:
      case ExprKind::Min:
      case ExprKind::Max:
      case ExprKind::Sign:
      case ExprKind::SelectMin:
      case ExprKind::SelectMax:
        return true;
      default:
        return false;
    }
  }

  std::string call(const char* name, const Expr& e) const {
    std::string s = std::string(name) + "(";
    const auto& c = e.children();
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i) s += ", ";
      s += expr(c[i]);
    }
    return s + ")";
  }

  std::string atom(const Expr& e) const {
    switch (e.kind()) {
      case ExprKind::Constant:
        if (std::signbit(e.value())) return "(-" + format_number(-e.value()) + ")";
        return format_number(e.value());
      case ExprKind::Variable:
        return e.index() < vars.dim() ? vars.name(e.index())
                                      : "_v" + std::to_string(e.index());
      case ExprKind::Abs:
        return call("abs", e);
      case ExprKind::Min:
        return call("min", e);
      case ExprKind::Max:
        return call("max", e);
      case ExprKind::Sign:
        return call("sign", e);
      case ExprKind::SelectMin:
        return call("select_min", e);
      case ExprKind::SelectMax:
        return call("select_max", e);
      default:
        return "(" + expr(e) + ")";
    }
  }
};

}  // namespace

std::string Expr::to_string(const VarSpace& vars) const { return Printer{vars}.expr(*this); }

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, Comma, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

class Lexer {
 public:
  Lexer(std::string_view text, std::size_t line, std::size_t column)
      : text_(text), line_(line), column_(column) {}

  Token next() {
    skip_space();
    Token t{Tok::End, "", line_, column_};
    if (pos_ >= text_.size()) return t;
    const char ch = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
      t.kind = Tok::Number;
      std::size_t end = pos_;
      while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) ++end;
      if (end < text_.size() && text_[end] == '.') {
        ++end;
        while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) ++end;
      }
      if (end < text_.size() && (text_[end] == 'e' || text_[end] == 'E')) {
        std::size_t e = end + 1;
        if (e < text_.size() && (text_[e] == '+' || text_[e] == '-')) ++e;
        if (e < text_.size() && std::isdigit(static_cast<unsigned char>(text_[e]))) {
          while (e < text_.size() && std::isdigit(static_cast<unsigned char>(text_[e]))) ++e;
          end = e;
        }
      }
      t.text = std::string(text_.substr(pos_, end - pos_));
      if (t.text == ".") throw ParseError("malformed number", line_, column_);
      advance(end - pos_);
      return t;
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      t.kind = Tok::Ident;
      std::size_t end = pos_;
      while (end < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_'))
        ++end;
      t.text = std::string(text_.substr(pos_, end - pos_));
      advance(end - pos_);
      return t;
    }
    switch (ch) {
      case '+': t.kind = Tok::Plus; break;
      case '-': t.kind = Tok::Minus; break;
      case '*': t.kind = Tok::Star; break;
      case '/': t.kind = Tok::Slash; break;
      case '^': t.kind = Tok::Caret; break;
      case '(': t.kind = Tok::LParen; break;
      case ')': t.kind = Tok::RParen; break;
      case ',': t.kind = Tok::Comma; break;
      default:
        throw ParseError(std::string("unexpected character '") + ch + "'", line_, column_);
    }
    t.text = std::string(1, ch);
    advance(1);
    return t;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      if (text_[pos_] == '\n') {
        ++line_;
        column_ = 1;
        ++pos_;
      } else {
        advance(1);
      }
    }
  }
  void advance(std::size_t k) {
    pos_ += k;
    column_ += k;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_;
  std::size_t column_;
};

class Parser {
 public:
  Parser(std::string_view text, const VarSpace& vars, const ParseOptions& opt)
      : lex_(text, opt.line, opt.column), vars_(vars), opt_(opt) {
    cur_ = lex_.next();
  }

  Expr parse() {
    Expr e = expr();
    if (cur_.kind != Tok::End) fail("unexpected '" + cur_.text + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, cur_.line, cur_.column);
  }
  void advance() { cur_ = lex_.next(); }
  void expect(Tok k, const char* what) {
    if (cur_.kind != k)
      fail(std::string("expected ") + what +
           (cur_.kind == Tok::End ? " at end of input" : " but found '" + cur_.text + "'"));
    advance();
  }

  Expr expr() {
    Expr lhs = term();
    while (cur_.kind == Tok::Plus || cur_.kind == Tok::Minus) {
      const bool plus = cur_.kind == Tok::Plus;
      advance();
      Expr rhs = term();
      lhs = plus ? Expr::add(lhs, rhs) : Expr::sub(lhs, rhs);
    }
    return lhs;
  }

  Expr term() {
    Expr lhs = factor();
    while (cur_.kind == Tok::Star || cur_.kind == Tok::Slash) {
      const bool mul = cur_.kind == Tok::Star;
      advance();
      Expr rhs = factor();
      lhs = mul ? Expr::mul(lhs, rhs) : Expr::div(lhs, rhs);
    }
    return lhs;
  }

  Expr factor() {
    bool negate = false;
    if (cur_.kind == Tok::Minus) {
      negate = true;
      advance();
    }
    const bool literal = cur_.kind == Tok::Number;
    Expr base = atom();
    // "-2" is the constant -2; "-(2)" and "-2^2" keep the negation node.
    if (negate && literal && cur_.kind != Tok::Caret) return Expr::constant(-base.value());
    if (cur_.kind == Tok::Caret) {
      advance();
      if (cur_.kind == Tok::Minus) fail("exponent must be a nonnegative integer");
      if (cur_.kind != Tok::Number) fail("expected integer exponent");
      if (cur_.text.find_first_not_of("0123456789") != std::string::npos)
        fail("non-integer exponent '" + cur_.text + "'");
      const unsigned long k = std::strtoul(cur_.text.c_str(), nullptr, 10);
      if (k > 1024) fail("exponent too large");
      advance();
      base = Expr::pow(base, static_cast<unsigned>(k));
    }
    return negate ? Expr::neg(base) : base;
  }

  Expr atom() {
    switch (cur_.kind) {
      case Tok::Number: {
        const double v = std::strtod(cur_.text.c_str(), nullptr);
        if (!std::isfinite(v)) fail("number out of range");
        advance();
        return Expr::constant(v);
      }
      case Tok::LParen: {
        advance();
        Expr e = expr();
        expect(Tok::RParen, "')'");
        return e;
      }
      case Tok::Ident: {
        const Token id = cur_;
        advance();
        if (is_reserved(id.text)) {
          if (!opt_.allow_nonsmooth)
            throw ParseError("'" + id.text + "' is not allowed in constraint expressions",
                             id.line, id.column);
          expect(Tok::LParen, "'('");
          std::vector<Expr> args{expr()};
          while (cur_.kind == Tok::Comma) {
            advance();
            args.push_back(expr());
          }
          expect(Tok::RParen, "')'");
          if (id.text == "abs") {
            if (args.size() != 1)
              throw ParseError("abs takes exactly one argument", id.line, id.column);
            return Expr::abs(args[0]);
          }
          return id.text == "min" ? Expr::min(std::move(args)) : Expr::max(std::move(args));
        }
        const auto idx = vars_.index_of(id.text);
        if (!idx) throw ParseError("unknown identifier '" + id.text + "'", id.line, id.column);
        return Expr::variable(*idx);
      }
      case Tok::End:
        fail("unexpected end of input");
      default:
        fail("unexpected '" + cur_.text + "'");
    }
  }

  Lexer lex_;
  const VarSpace& vars_;
  const ParseOptions& opt_;
  Token cur_;
};

}  // namespace

Expr parse_expr(std::string_view text, const VarSpace& vars, const ParseOptions& options) {
  return Parser(text, vars, options).parse();
}

}  // namespace mpvc
