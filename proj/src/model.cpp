#include "mpvc/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "mpvc/penalty.hpp"

namespace mpvc {

SmoothFunction::SmoothFunction(Expr expr, std::size_t dim)
    : expr_(std::move(expr)), partials_(expr_.gradient(dim)) {}

MpvcProblem::MpvcProblem(std::string name, VarSpace vars, Expr objective, std::vector<Expr> g,
                         std::vector<Expr> h, std::vector<std::pair<Expr, Expr>> vc_pairs)
    : name_(std::move(name)), vars_(std::move(vars)), objective_(std::move(objective)) {
  if (vc_pairs.empty())
    throw InvalidArgument("an MPVC needs at least one vanishing constraint pair");
  const std::size_t n = vars_.dim();
  auto check = [&](const Expr& e, const char* what) {
    if (e.arity() > n)
      throw InvalidArgument(std::string(what) + " references an undeclared variable");
  };
  auto smooth = [&](const Expr& e, const char* what) {
    check(e, what);
    if (!e.is_smooth())
      throw InvalidArgument(std::string(what) + " must not contain abs, min or max");
    return SmoothFunction(e, n);
  };
  check(objective_, "objective");
  for (const auto& e : g) g_.push_back(smooth(e, "g"));
  for (const auto& e : h) h_.push_back(smooth(e, "h"));
  for (const auto& [G, H] : vc_pairs) vc_.push_back({smooth(G, "G"), smooth(H, "H")});
}

double MpvcProblem::f(std::span<const double> x) const {
  check_dim(x);
  return objective_.eval(x);
}

void MpvcProblem::check_dim(std::span<const double> x) const {
  if (x.size() != dim())
    throw EvalError("point has dimension " + std::to_string(x.size()) + ", problem has " +
                    std::to_string(dim()));
}

MpvcProblem MpvcProblem::without_g_h() const {
  std::vector<std::pair<Expr, Expr>> pairs;
  for (const auto& p : vc_) pairs.emplace_back(p.G.expr(), p.H.expr());
  return MpvcProblem(name_, vars_, objective_, {}, {}, std::move(pairs));
}

std::string MpvcProblem::to_text() const {
  std::ostringstream os;
  os << "[name] " << name_ << "\n[vars]";
  for (const auto& v : vars_.names()) os << ' ' << v;
  os << "\n[objective] " << objective_.to_string(vars_) << "\n";
  if (!g_.empty()) {
    os << "[g]\n";
    for (const auto& f : g_) os << f.expr().to_string(vars_) << "\n";
  }
  if (!h_.empty()) {
    os << "[h]\n";
    for (const auto& f : h_) os << f.expr().to_string(vars_) << "\n";
  }
  os << "[vc]\n";
  for (const auto& p : vc_)
    os << "G: " << p.G.expr().to_string(vars_) << " ; H: " << p.H.expr().to_string(vars_)
       << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Problem files

namespace {

struct Item {
  std::string text;
  std::size_t line;
  std::size_t column;
};

struct Section {
  std::size_t line;
  std::vector<Item> items;
};

std::string_view trim_left(std::string_view s, std::size_t& column) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
    ++column;
  }
  return s;
}

std::string_view trim_right(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

MpvcProblem parse_problem(std::string_view text) {
  static const char* kSections[] = {"name", "vars", "objective", "g", "h", "vc"};
  std::map<std::string, Section> sections;
  Section* current = nullptr;

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::size_t column = 1;
    line = trim_right(trim_left(line, column));
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }
    if (line.front() == '[') {
      const auto close = line.find(']');
      if (close == std::string_view::npos)
        throw ParseError("unterminated section header", line_no, column);
      const std::string header(line.substr(1, close - 1));
      if (std::find(std::begin(kSections), std::end(kSections), header) == std::end(kSections))
        throw ParseError("unknown section [" + header + "]", line_no, column);
      if (sections.count(header))
        throw ParseError("duplicate section [" + header + "]", line_no, column);
      current = &sections[header];
      current->line = line_no;
      std::size_t rest_col = column + close + 1;
      std::string_view rest = trim_left(line.substr(close + 1), rest_col);
      if (!rest.empty()) current->items.push_back({std::string(rest), line_no, rest_col});
    } else {
      if (!current) throw ParseError("content outside of any section", line_no, column);
      current->items.push_back({std::string(line), line_no, column});
    }
    if (end == text.size()) break;
  }

  auto single = [&](const char* name, bool required) -> std::optional<Item> {
    auto it = sections.find(name);
    if (it == sections.end()) {
      if (required)
        throw ParseError(std::string("missing [") + name + "] section", line_no, 1);
      return std::nullopt;
    }
    if (it->second.items.empty())
      throw ParseError(std::string("empty [") + name + "] section", it->second.line, 1);
    if (it->second.items.size() > 1)
      throw ParseError(std::string("[") + name + "] takes a single line",
                       it->second.items[1].line, it->second.items[1].column);
    return it->second.items.front();
  };

  std::string name = "unnamed";
  if (auto item = single("name", false)) name = item->text;

  const Item vars_item = *single("vars", true);
  std::vector<std::string> names;
  {
    std::istringstream is(vars_item.text);
    for (std::string v; is >> v;) names.push_back(v);
  }
  std::optional<VarSpace> vars;
  try {
    vars.emplace(std::move(names));
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what(), vars_item.line, vars_item.column);
  }

  auto expr_at = [&](std::string_view s, std::size_t line, std::size_t col, bool smooth) {
    ParseOptions opt;
    opt.allow_nonsmooth = !smooth;
    opt.line = line;
    opt.column = col;
    return parse_expr(s, *vars, opt);
  };

  const Item obj = *single("objective", true);
  Expr objective = expr_at(obj.text, obj.line, obj.column, false);

  auto family = [&](const char* name) {
    std::vector<Expr> out;
    if (auto it = sections.find(name); it != sections.end())
      for (const auto& item : it->second.items)
        out.push_back(expr_at(item.text, item.line, item.column, true));
    return out;
  };
  std::vector<Expr> g = family("g");
  std::vector<Expr> h = family("h");

  std::vector<std::pair<Expr, Expr>> pairs;
  auto vc = sections.find("vc");
  if (vc == sections.end()) throw ParseError("missing [vc] section", line_no, 1);
  if (vc->second.items.empty())
    throw ParseError("an MPVC needs at least one vanishing constraint pair", vc->second.line, 1);
  for (const auto& item : vc->second.items) {
    const std::string_view s = item.text;
    const auto semi = s.find(';');
    if (semi == std::string_view::npos)
      throw ParseError("expected 'G: <expr> ; H: <expr>'", item.line, item.column);
    auto side = [&](std::string_view part, std::size_t col, char label) {
      std::size_t c = col;
      part = trim_left(part, c);
      if (part.size() < 2 || part[0] != label || part[1] != ':')
        throw ParseError(std::string("expected '") + label + ":'", item.line, c);
      c += 2;
      part = trim_left(part.substr(2), c);
      return expr_at(trim_right(part), item.line, c, true);
    };
    Expr G = side(s.substr(0, semi), item.column, 'G');
    Expr H = side(s.substr(semi + 1), item.column + semi + 1, 'H');
    pairs.emplace_back(std::move(G), std::move(H));
  }

  return MpvcProblem(std::move(name), std::move(*vars), std::move(objective), std::move(g),
                     std::move(h), std::move(pairs));
}

MpvcProblem load_problem(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open problem file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_problem(ss.str());
}

// ---------------------------------------------------------------------------
// Residuals and classification

Residuals residuals(const MpvcProblem& prob, std::span<const double> x) {
  prob.check_dim(x);
  Residuals r;
  for (const auto& g : prob.g()) r.g_plus.push_back(std::max(0.0, g.value(x)));
  for (const auto& h : prob.h()) r.h_abs.push_back(std::fabs(h.value(x)));
  for (const auto& p : prob.vc()) r.vc_dist.push_back(dist_omega({p.G.value(x), p.H.value(x)}));
  for (double v : r.g_plus) r.total += v;
  for (double v : r.h_abs) r.total += v;
  for (double v : r.vc_dist) r.total += v;
  return r;
}

double residual_total(const MpvcProblem& prob, std::span<const double> x) {
  prob.check_dim(x);
  double total = 0.0;
  for (const auto& g : prob.g()) total += std::max(0.0, g.value(x));
  for (const auto& h : prob.h()) total += std::fabs(h.value(x));
  for (const auto& p : prob.vc()) total += dist_omega({p.G.value(x), p.H.value(x)});
  return total;
}

bool is_feasible(const MpvcProblem& prob, std::span<const double> x, double tol) {
  return residual_total(prob, x) <= tol;
}

bool contains(const std::vector<std::size_t>& set, std::size_t i) {
  return std::find(set.begin(), set.end(), i) != set.end();
}

PairClass pair_class(const IndexSets& s, std::size_t i) {
  if (contains(s.plus_zero, i)) return PairClass::PlusZero;
  if (contains(s.plus_minus, i)) return PairClass::PlusMinus;
  if (contains(s.zero_plus, i)) return PairClass::ZeroPlus;
  if (contains(s.zero_minus, i)) return PairClass::ZeroMinus;
  if (contains(s.zero_zero, i)) return PairClass::ZeroZero;
  throw InvalidArgument("index " + std::to_string(i) + " is not classified");
}

IndexSets classify(const MpvcProblem& prob, std::span<const double> x, double tol_active) {
  if (!(tol_active >= 0.0)) throw InvalidArgument("tol_active must be nonnegative");
  const double total = residual_total(prob, x);
  if (!(total <= tol_active))
    throw InfeasiblePointError("point is infeasible (residual " + std::to_string(total) + ")");

  IndexSets s;
  s.tol_active = tol_active;
  auto is_zero = [&](double v) { return std::fabs(v) <= tol_active; };
  for (std::size_t i = 0; i < prob.m(); ++i)
    if (is_zero(prob.g()[i].value(x))) s.active_g.push_back(i);
  for (std::size_t i = 0; i < prob.q(); ++i) {
    const double G = prob.vc()[i].G.value(x);
    const double H = prob.vc()[i].H.value(x);
    if (H > tol_active) {
      s.plus.push_back(i);
      (G > -tol_active ? s.plus_zero : s.plus_minus).push_back(i);
    } else {
      s.zero.push_back(i);
      if (is_zero(G))
        s.zero_zero.push_back(i);
      else
        (G > 0.0 ? s.zero_plus : s.zero_minus).push_back(i);
    }
  }
  return s;
}

}  // namespace mpvc
