#include "mpvc/generator.hpp"

#include <sstream>

namespace mpvc {

std::mt19937_64 instance_rng(std::uint64_t seed, std::size_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

namespace {

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

int nonzero_coef(std::mt19937_64& rng, int range) {
  const int c = uniform_int(rng, 1, range);
  return uniform_int(rng, 0, 1) ? c : -c;
}

/// Polynomial without constant term, as text, e.g. "2*x1^2*x2 + (-1)*x3".
std::string random_polynomial(std::mt19937_64& rng, const std::vector<std::string>& vars,
                              const GeneratorConfig& cfg) {
  const std::size_t terms = static_cast<std::size_t>(uniform_int(rng, 1, static_cast<int>(cfg.max_terms)));
  std::ostringstream os;
  for (std::size_t t = 0; t < terms; ++t) {
    const unsigned degree = static_cast<unsigned>(uniform_int(rng, 1, static_cast<int>(cfg.max_degree)));
    std::vector<unsigned> powers(vars.size(), 0);
    for (unsigned d = 0; d < degree; ++d)
      ++powers[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(vars.size()) - 1))];
    const int c = nonzero_coef(rng, cfg.coef_range);
    if (t > 0) os << " + ";
    os << "(" << c << ")";
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (powers[i] == 0) continue;
      os << "*" << vars[i];
      if (powers[i] > 1) os << "^" << powers[i];
    }
  }
  return os.str();
}

std::string with_constant(const std::string& poly, int c) {
  if (c == 0) return poly;
  return poly + " + (" + std::to_string(c) + ")";
}

}  // namespace

std::string generate_instance_text(const GeneratorConfig& cfg, std::uint64_t seed,
                                   std::size_t index) {
  if (cfg.max_dim == 0 || cfg.max_vc == 0 || cfg.max_degree == 0 || cfg.max_terms == 0 ||
      cfg.coef_range <= 0)
    throw InvalidArgument("generator limits must be positive");
  auto rng = instance_rng(seed, index);
  const std::size_t n = static_cast<std::size_t>(uniform_int(rng, 1, static_cast<int>(cfg.max_dim)));
  std::vector<std::string> vars;
  for (std::size_t i = 0; i < n; ++i) vars.push_back("x" + std::to_string(i + 1));
  const std::size_t m = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(cfg.max_g)));
  const std::size_t l = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(std::min(cfg.max_h, n - 1))));
  const std::size_t q = static_cast<std::size_t>(uniform_int(rng, 1, static_cast<int>(cfg.max_vc)));
  const bool force_biactive = index % 2 == 0;

  std::ostringstream os;
  os << "[name] random-" << seed << "-" << index << "\n[vars]";
  for (const auto& v : vars) os << ' ' << v;
  os << "\n[objective] " << random_polynomial(rng, vars, cfg) << "\n";
  if (m > 0) {
    os << "[g]\n";
    for (std::size_t i = 0; i < m; ++i) {
      const int c = uniform_int(rng, 0, 1) ? 0 : -uniform_int(rng, 1, cfg.coef_range);
      os << with_constant(random_polynomial(rng, vars, cfg), c) << "\n";
    }
  }
  if (l > 0) {
    os << "[h]\n";
    for (std::size_t j = 0; j < l; ++j) os << random_polynomial(rng, vars, cfg) << "\n";
  }
  os << "[vc]\n";
  for (std::size_t i = 0; i < q; ++i) {
    // 0: I_+0, 1: I_+-, 2: I_0+, 3: I_0-, 4: I_00
    int cls = uniform_int(rng, 0, 4);
    if (force_biactive && i == 0) cls = 4;
    const int h_const = cls <= 1 ? uniform_int(rng, 1, cfg.coef_range) : 0;
    int g_const = 0;
    if (cls == 1 || cls == 3) g_const = -uniform_int(rng, 1, cfg.coef_range);
    if (cls == 2) g_const = uniform_int(rng, 1, cfg.coef_range);
    const std::string G = with_constant(random_polynomial(rng, vars, cfg), g_const);
    const std::string H = with_constant(random_polynomial(rng, vars, cfg), h_const);
    os << "G: " << G << " ; H: " << H << "\n";
  }
  return os.str();
}

MpvcProblem generate_instance(const GeneratorConfig& cfg, std::uint64_t seed, std::size_t index) {
  return parse_problem(generate_instance_text(cfg, seed, index));
}

namespace {

Expr random_expr_at(std::mt19937_64& rng, std::size_t dim, const ExprGenConfig& cfg,
                    std::size_t depth) {
  const bool leaf = depth >= cfg.max_depth || uniform_int(rng, 0, 3) == 0;
  if (leaf) {
    if (uniform_int(rng, 0, 2) == 0) {
      // Mix integers and short decimals.
      const double c = uniform_int(rng, 0, 1) ? nonzero_coef(rng, cfg.coef_range)
                                              : nonzero_coef(rng, 40) / 8.0;
      return Expr::constant(c);
    }
    return Expr::variable(static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(dim) - 1)));
  }
  auto sub = [&] { return random_expr_at(rng, dim, cfg, depth + 1); };
  const int top = cfg.nonsmooth ? 8 : 5;
  switch (uniform_int(rng, 0, top)) {
    case 0: return Expr::neg(sub());
    case 1: return Expr::add(sub(), sub());
    case 2: return Expr::sub(sub(), sub());
    case 3: return Expr::mul(sub(), sub());
    case 4:
      if (cfg.division) {
        // 1 + e^2 keeps the denominator at least one.
        return Expr::div(sub(), Expr::add(Expr::constant(1.0), Expr::pow(sub(), 2)));
      }
      return Expr::mul(sub(), sub());
    case 5: return Expr::pow(sub(), static_cast<unsigned>(uniform_int(rng, 0, 3)));
    case 6: return Expr::abs(sub());
    case 7: return Expr::min({sub(), sub()});
    default: return Expr::max({sub(), sub()});
  }
}

}  // namespace

Expr random_expr(std::mt19937_64& rng, std::size_t dim, const ExprGenConfig& cfg) {
  if (dim == 0) throw InvalidArgument("expression generator needs at least one variable");
  return random_expr_at(rng, dim, cfg, 0);
}

}  // namespace mpvc
