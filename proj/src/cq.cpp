#include "mpvc/cq.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace mpvc {

// ---------------------------------------------------------------------------
// Multipliers

double MultiplierVector::l1_norm() const {
  double s = 0.0;
  for (const auto* v : {&lambda, &mu, &eta_H, &eta_G})
    for (double e : *v) s += std::fabs(e);
  return s;
}

bool MultiplierVector::is_zero(double tol) const {
  for (const auto* v : {&lambda, &mu, &eta_H, &eta_G})
    for (double e : *v)
      if (std::fabs(e) > tol) return false;
  return true;
}

MultiplierVector MultiplierVector::normalized() const {
  MultiplierVector out = *this;
  const double n = l1_norm();
  if (n == 0.0) return out;
  for (auto* v : {&out.lambda, &out.mu, &out.eta_H, &out.eta_G})
    for (double& e : *v) e /= n;
  return out;
}

double stationarity_residual(const MpvcProblem& prob, std::span<const double> x,
                             const MultiplierVector& mult) {
  prob.check_dim(x);
  std::vector<double> r(prob.dim(), 0.0);
  auto acc = [&](const std::vector<double>& grad, double w) {
    if (w == 0.0) return;
    for (std::size_t k = 0; k < r.size(); ++k) r[k] += w * grad[k];
  };
  for (std::size_t i = 0; i < prob.m(); ++i) acc(prob.g()[i].grad(x), mult.lambda.at(i));
  for (std::size_t j = 0; j < prob.l(); ++j) acc(prob.h()[j].grad(x), mult.mu.at(j));
  for (std::size_t i = 0; i < prob.q(); ++i) {
    acc(prob.vc()[i].G.grad(x), mult.eta_G.at(i));
    acc(prob.vc()[i].H.grad(x), -mult.eta_H.at(i));
  }
  double s = 0.0;
  for (double v : r) s += std::fabs(v);
  return s;
}

bool satisfies_sign_pattern(const IndexSets& sets, const MultiplierVector& mult,
                            bool complementarity, double tol) {
  auto zero = [&](double v) { return std::fabs(v) <= tol; };
  for (std::size_t i = 0; i < mult.lambda.size(); ++i) {
    if (contains(sets.active_g, i)) {
      if (mult.lambda[i] < -tol) return false;
    } else if (!zero(mult.lambda[i])) {
      return false;
    }
  }
  for (std::size_t i = 0; i < mult.eta_G.size(); ++i) {
    switch (pair_class(sets, i)) {
      case PairClass::PlusMinus:
        if (!zero(mult.eta_G[i]) || !zero(mult.eta_H[i])) return false;
        break;
      case PairClass::PlusZero:
        if (mult.eta_G[i] < -tol || !zero(mult.eta_H[i])) return false;
        break;
      case PairClass::ZeroPlus:
        if (!zero(mult.eta_G[i])) return false;
        break;
      case PairClass::ZeroMinus:
        if (!zero(mult.eta_G[i]) || mult.eta_H[i] < -tol) return false;
        break;
      case PairClass::ZeroZero:
        if (mult.eta_G[i] < -tol) return false;
        if (complementarity && std::fabs(mult.eta_G[i] * mult.eta_H[i]) > tol) return false;
        break;
    }
  }
  return true;
}

double weighted_constraint_sum(const MpvcProblem& prob, std::span<const double> y,
                               const MultiplierVector& mult) {
  double s = 0.0;
  for (std::size_t i = 0; i < prob.m(); ++i)
    if (mult.lambda[i] != 0.0) s += mult.lambda[i] * prob.g()[i].value(y);
  for (std::size_t j = 0; j < prob.l(); ++j)
    if (mult.mu[j] != 0.0) s += mult.mu[j] * prob.h()[j].value(y);
  for (std::size_t i = 0; i < prob.q(); ++i) {
    if (mult.eta_G[i] != 0.0) s += mult.eta_G[i] * prob.vc()[i].G.value(y);
    if (mult.eta_H[i] != 0.0) s -= mult.eta_H[i] * prob.vc()[i].H.value(y);
  }
  return s;
}

bool quasinormal_signs_hold(const MpvcProblem& prob, std::span<const double> y,
                            const MultiplierVector& mult, double pos_tol, double active_tol) {
  bool any = false;
  for (std::size_t i = 0; i < prob.m(); ++i) {
    const double w = mult.lambda[i];
    if (w > active_tol) {
      any = true;
      if (!(w * prob.g()[i].value(y) > pos_tol)) return false;
    }
  }
  for (std::size_t j = 0; j < prob.l(); ++j) {
    const double w = mult.mu[j];
    if (std::fabs(w) > active_tol) {
      any = true;
      if (!(w * prob.h()[j].value(y) > pos_tol)) return false;
    }
  }
  for (std::size_t i = 0; i < prob.q(); ++i) {
    const double wh = mult.eta_H[i];
    if (std::fabs(wh) > active_tol) {
      any = true;
      if (!(wh * prob.vc()[i].H.value(y) < -pos_tol)) return false;
    }
    const double wg = mult.eta_G[i];
    if (wg > active_tol) {
      any = true;
      if (!(wg * prob.vc()[i].G.value(y) > pos_tol)) return false;
    }
  }
  return any;
}

// ---------------------------------------------------------------------------
// Gradient stacks

namespace {

struct Gradients {
  std::vector<std::vector<double>> g, h, G, H;
};

Gradients gradients_at(const MpvcProblem& prob, std::span<const double> x) {
  prob.check_dim(x);
  Gradients out;
  for (const auto& f : prob.g()) out.g.push_back(f.grad(x));
  for (const auto& f : prob.h()) out.h.push_back(f.grad(x));
  for (const auto& p : prob.vc()) {
    out.G.push_back(p.G.grad(x));
    out.H.push_back(p.H.grad(x));
  }
  return out;
}

std::vector<std::size_t> merged(std::vector<std::size_t> a, const std::vector<std::size_t>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  return a;
}

constexpr double kRankTol = 1e-10;

}  // namespace

CqVerdict check_licq(const MpvcProblem& prob, std::span<const double> x, const IndexSets& sets) {
  const Gradients gr = gradients_at(prob, x);
  RankCertificate cert;
  for (std::size_t i : sets.active_g) cert.gradients.push_back(gr.g[i]);
  for (const auto& v : gr.h) cert.gradients.push_back(v);
  for (std::size_t i : merged(sets.plus_zero, sets.zero_zero)) cert.gradients.push_back(gr.G[i]);
  for (std::size_t i : sets.zero) cert.gradients.push_back(gr.H[i]);
  cert.rows = cert.gradients.size();
  cert.rank = rank(DenseMatrix::from_rows(cert.gradients), kRankTol);

  CqVerdict v;
  v.name = CqName::Licq;
  v.status = cert.rank == cert.rows ? CqStatus::Certified : CqStatus::Refuted;
  if (cert.rows == 0) v.notes = "no active constraints";
  else
    v.notes = std::to_string(cert.rows) + " active gradients, rank " + std::to_string(cert.rank);
  v.certificate = std::move(cert);
  return v;
}

namespace {

/// Multiplier LP layout: one LP column per sign-restricted component, two for
/// free components (kept as separate nonnegative columns so that the box
/// bounds apply to the value rather than the parts).
struct MultiplierLayout {
  enum class Sign { NonNeg, Free };
  struct Component {
    int family;  // 0 lambda, 1 mu, 2 eta_H, 3 eta_G
    std::size_t index;
    Sign sign;
  };
  std::vector<Component> comps;

  void add(int family, std::size_t index, Sign sign) { comps.push_back({family, index, sign}); }

  MultiplierVector unpack(const MpvcProblem& prob, const std::vector<double>& z) const {
    MultiplierVector m;
    m.lambda.assign(prob.m(), 0.0);
    m.mu.assign(prob.l(), 0.0);
    m.eta_H.assign(prob.q(), 0.0);
    m.eta_G.assign(prob.q(), 0.0);
    std::vector<double>* fam[] = {&m.lambda, &m.mu, &m.eta_H, &m.eta_G};
    for (std::size_t k = 0; k < comps.size(); ++k)
      (*fam[comps[k].family])[comps[k].index] = z[k];
    return m;
  }
};

/// Column of the stationarity system for one component.
const std::vector<double>& column_gradient(const Gradients& gr, const MultiplierLayout::Component& c) {
  switch (c.family) {
    case 0: return gr.g[c.index];
    case 1: return gr.h[c.index];
    case 2: return gr.H[c.index];
    default: return gr.G[c.index];
  }
}

/// Box-bounded LP over a multiplier cone: stationarity rows, |z_k| <= 1.
LpProblem cone_lp(const Gradients& gr, const MultiplierLayout& layout, std::size_t n) {
  LpProblem lp;
  const std::size_t k = layout.comps.size();
  lp.objective.assign(k, 0.0);
  for (const auto& c : layout.comps)
    lp.bounds.push_back(c.sign == MultiplierLayout::Sign::NonNeg ? LpBound{0.0, 1.0}
                                                                 : LpBound{kFree, 1.0});
  for (std::size_t r = 0; r < n; ++r) {
    std::vector<double> row(k, 0.0);
    for (std::size_t j = 0; j < k; ++j) {
      const double sgn = layout.comps[j].family == 2 ? -1.0 : 1.0;
      row[j] = sgn * column_gradient(gr, layout.comps[j])[r];
    }
    lp.add_row(std::move(row), Relation::Equal, 0.0);
  }
  for (std::size_t j = 0; j < k; ++j) {
    if (layout.comps[j].sign != MultiplierLayout::Sign::Free) continue;
    std::vector<double> row(k, 0.0);
    row[j] = 1.0;
    lp.add_row(std::move(row), Relation::GreaterEq, -1.0);
  }
  return lp;
}

/// Searches the cone for a nonzero element: first maximizes the sum of the
/// sign-restricted components, then each free component in turn.
std::optional<std::vector<double>> nonzero_in_cone(const LpProblem& base,
                                                   const MultiplierLayout& layout,
                                                   LpOutcome& decisive) {
  const std::size_t k = layout.comps.size();
  LpProblem lp = base;
  bool has_nonneg = false;
  for (std::size_t j = 0; j < k; ++j)
    if (layout.comps[j].sign == MultiplierLayout::Sign::NonNeg) {
      lp.objective[j] = 1.0;
      has_nonneg = true;
    }
  if (has_nonneg) {
    decisive = solve_lp(lp);
    if (decisive.status == LpStatus::Optimal && decisive.value > kEpsStrict) return decisive.x;
  }
  for (std::size_t j = 0; j < k; ++j) {
    if (layout.comps[j].sign != MultiplierLayout::Sign::Free) continue;
    lp.objective.assign(k, 0.0);
    lp.objective[j] = 1.0;
    decisive = solve_lp(lp);
    if (decisive.status == LpStatus::Optimal && decisive.value > kEpsStrict) return decisive.x;
  }
  decisive = LpOutcome{LpStatus::Infeasible, 0.0, {}};
  return std::nullopt;
}

MultiplierLayout branch_layout(const MpvcProblem& prob, const IndexSets& sets,
                               const std::map<std::size_t, BiactiveBranch>& branch) {
  using S = MultiplierLayout::Sign;
  MultiplierLayout layout;
  for (std::size_t i : sets.active_g) layout.add(0, i, S::NonNeg);
  for (std::size_t j = 0; j < prob.l(); ++j) layout.add(1, j, S::Free);
  for (std::size_t i = 0; i < prob.q(); ++i) {
    switch (pair_class(sets, i)) {
      case PairClass::PlusMinus:
        break;
      case PairClass::PlusZero:
        layout.add(3, i, S::NonNeg);
        break;
      case PairClass::ZeroPlus:
        layout.add(2, i, S::Free);
        break;
      case PairClass::ZeroMinus:
        layout.add(2, i, S::NonNeg);
        break;
      case PairClass::ZeroZero:
        if (branch.at(i) == BiactiveBranch::HZero)
          layout.add(3, i, S::NonNeg);
        else
          layout.add(2, i, S::Free);
        break;
    }
  }
  return layout;
}

std::vector<std::map<std::size_t, BiactiveBranch>> all_branches(const IndexSets& sets,
                                                               std::size_t cap) {
  const std::size_t k = sets.zero_zero.size();
  if (k > cap)
    throw InvalidArgument("biactive set has " + std::to_string(k) +
                          " indices, above the branch cap of " + std::to_string(cap));
  std::vector<std::map<std::size_t, BiactiveBranch>> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    std::map<std::size_t, BiactiveBranch> b;
    for (std::size_t bit = 0; bit < k; ++bit)
      b[sets.zero_zero[bit]] = (mask >> bit) & 1u ? BiactiveBranch::GZero : BiactiveBranch::HZero;
    out.push_back(std::move(b));
  }
  return out;
}

std::vector<double> flatten(const MultiplierVector& m) {
  std::vector<double> z;
  for (const auto* v : {&m.lambda, &m.mu, &m.eta_H, &m.eta_G}) z.insert(z.end(), v->begin(), v->end());
  return z;
}

}  // namespace

CqVerdict check_mfcq(const MpvcProblem& prob, std::span<const double> x, const IndexSets& sets) {
  const Gradients gr = gradients_at(prob, x);
  const std::size_t n = prob.dim();
  CqVerdict v;
  v.name = CqName::Mfcq;

  // (a) equality-type gradients linearly independent.
  RankCertificate rc;
  rc.gradients = gr.h;
  const auto h_eq = merged(sets.zero_plus, sets.zero_zero);
  for (std::size_t i : h_eq) rc.gradients.push_back(gr.H[i]);
  rc.rows = rc.gradients.size();
  rc.rank = rank(DenseMatrix::from_rows(rc.gradients), kRankTol);
  if (rc.rank < rc.rows) {
    rc.stage = "linear independence";
    v.status = CqStatus::Refuted;
    v.notes = "equality-type gradients are linearly dependent";
    v.certificate = std::move(rc);
    return v;
  }

  // (b) max s <= 1 over strict inequalities with margin s.
  LpProblem lp;
  lp.objective.assign(n + 1, 0.0);
  lp.objective[n] = 1.0;
  lp.bounds.assign(n, LpBound{kFree, std::numeric_limits<double>::infinity()});
  lp.bounds.push_back(LpBound{0.0, 1.0});
  auto row_with = [&](const std::vector<double>& grad, double sign, double s_coef) {
    std::vector<double> row(n + 1, 0.0);
    for (std::size_t k = 0; k < n; ++k) row[k] = sign * grad[k];
    row[n] = s_coef;
    return row;
  };
  for (const auto& g : gr.h) lp.add_row(row_with(g, 1.0, 0.0), Relation::Equal, 0.0);
  for (std::size_t i : h_eq) lp.add_row(row_with(gr.H[i], 1.0, 0.0), Relation::Equal, 0.0);
  for (std::size_t i : sets.active_g) lp.add_row(row_with(gr.g[i], 1.0, 1.0), Relation::LessEq, 0.0);
  for (std::size_t i : sets.zero_minus)
    lp.add_row(row_with(gr.H[i], -1.0, 1.0), Relation::LessEq, 0.0);
  for (std::size_t i : merged(sets.plus_zero, sets.zero_zero))
    lp.add_row(row_with(gr.G[i], 1.0, 1.0), Relation::LessEq, 0.0);

  const LpOutcome out = solve_lp(lp);
  if (out.status == LpStatus::Optimal) v.lp_value = out.value;
  if (out.status == LpStatus::Optimal && out.value > kEpsStrict) {
    v.status = CqStatus::Certified;
    DirectionCertificate dc;
    dc.d.assign(out.x.begin(), out.x.begin() + static_cast<std::ptrdiff_t>(n));
    dc.slack = out.value;
    v.notes = "strict direction with slack " + std::to_string(out.value);
    v.certificate = std::move(dc);
    return v;
  }

  // Refuted: a nonzero multiplier on the strict rows (alternative theorem)
  // certifies that no strict direction exists.
  v.status = CqStatus::Refuted;
  v.notes = "no strictly feasible direction (LP optimum " + std::to_string(out.value) + ")";
  using S = MultiplierLayout::Sign;
  MultiplierLayout layout;
  for (std::size_t i : sets.active_g) layout.add(0, i, S::NonNeg);
  for (std::size_t i : sets.zero_minus) layout.add(2, i, S::NonNeg);
  for (std::size_t i : merged(sets.plus_zero, sets.zero_zero)) layout.add(3, i, S::NonNeg);
  const std::size_t strict = layout.comps.size();
  for (std::size_t j = 0; j < prob.l(); ++j) layout.add(1, j, S::Free);
  for (std::size_t i : h_eq) layout.add(2, i, S::Free);
  // Stationarity rows only; the strict part is normalized to sum 1 and the
  // free parts need no box.
  LpProblem alt = cone_lp(gr, layout, n);
  alt.rows.resize(n);
  alt.relations.resize(n);
  alt.rhs.resize(n);
  for (auto& b : alt.bounds) b.upper = std::numeric_limits<double>::infinity();
  std::vector<double> norm(layout.comps.size(), 0.0);
  for (std::size_t j = 0; j < strict; ++j) norm[j] = 1.0;
  alt.add_row(std::move(norm), Relation::Equal, 1.0);
  const LpOutcome dual = solve_lp(alt);
  if (dual.status == LpStatus::Optimal) {
    MultiplierVector mult = layout.unpack(prob, dual.x);
    v.certificate = mult;
  } else {
    rc.stage = "strict direction";
    v.certificate = std::move(rc);
  }
  return v;
}

std::vector<BranchResult> enumerate_multiplier_branches(const MpvcProblem& prob,
                                                        std::span<const double> x,
                                                        const IndexSets& sets,
                                                        std::size_t branch_cap) {
  const Gradients gr = gradients_at(prob, x);
  std::vector<BranchResult> out;
  for (auto& branch : all_branches(sets, branch_cap)) {
    BranchResult br;
    br.branch = std::move(branch);
    const MultiplierLayout layout = branch_layout(prob, sets, br.branch);
    const LpProblem lp = cone_lp(gr, layout, prob.dim());
    if (auto z = nonzero_in_cone(lp, layout, br.lp)) {
      MultiplierVector m = layout.unpack(prob, *z).normalized();
      m.branch = br.branch;
      br.lp.x = flatten(m);
      br.multiplier = std::move(m);
    }
    out.push_back(std::move(br));
  }
  return out;
}

CqVerdict check_gmfcq(const MpvcProblem& prob, std::span<const double> x, const IndexSets& sets,
                      std::size_t branch_cap) {
  CqVerdict v;
  v.name = CqName::Gmfcq;
  v.status = CqStatus::Certified;
  const auto branches = enumerate_multiplier_branches(prob, x, sets, branch_cap);
  for (const auto& br : branches) {
    if (!br.multiplier) continue;
    v.status = CqStatus::Refuted;
    v.certificate = *br.multiplier;
    v.notes = "nonzero multiplier found";
    return v;
  }
  v.notes = "all " + std::to_string(branches.size()) + " branch LPs infeasible";
  return v;
}

// ---------------------------------------------------------------------------
// Sequence refuters

std::vector<MultiplierVector> candidate_multipliers(const MpvcProblem& prob,
                                                    std::span<const double> x,
                                                    const IndexSets& sets,
                                                    std::size_t branch_cap) {
  const Gradients gr = gradients_at(prob, x);
  std::vector<MultiplierVector> out;
  auto seen = [&](const MultiplierVector& m) {
    const auto z = flatten(m);
    return std::any_of(out.begin(), out.end(), [&](const MultiplierVector& o) {
      const auto w = flatten(o);
      for (std::size_t k = 0; k < z.size(); ++k)
        if (std::fabs(z[k] - w[k]) > 1e-9) return false;
      return true;
    });
  };

  for (auto& branch : all_branches(sets, branch_cap)) {
    const MultiplierLayout layout = branch_layout(prob, sets, branch);
    const LpProblem base = cone_lp(gr, layout, prob.dim());
    LpOutcome decisive;
    if (!nonzero_in_cone(base, layout, decisive)) continue;

    std::vector<MultiplierVector> found;
    auto keep = [&](const std::vector<double>& z) {
      MultiplierVector m = layout.unpack(prob, z);
      if (m.is_zero(1e-12)) return;
      m = m.normalized();
      m.branch = branch;
      if (!seen(m)) {
        found.push_back(m);
        out.push_back(std::move(m));
      }
    };
    keep(decisive.x);
    const std::size_t k = layout.comps.size();
    for (std::size_t j = 0; j < k; ++j)
      for (double sgn : {1.0, -1.0}) {
        LpProblem lp = base;
        lp.objective.assign(k, 0.0);
        lp.objective[j] = sgn;
        const LpOutcome r = solve_lp(lp);
        if (r.status == LpStatus::Optimal) keep(r.x);
      }
    if (found.size() > 1) {
      MultiplierVector c = found.front();
      for (auto* v : {&c.lambda, &c.mu, &c.eta_H, &c.eta_G}) std::fill(v->begin(), v->end(), 0.0);
      for (const auto& f : found) {
        for (std::size_t i = 0; i < c.lambda.size(); ++i) c.lambda[i] += f.lambda[i];
        for (std::size_t i = 0; i < c.mu.size(); ++i) c.mu[i] += f.mu[i];
        for (std::size_t i = 0; i < c.eta_H.size(); ++i) c.eta_H[i] += f.eta_H[i];
        for (std::size_t i = 0; i < c.eta_G.size(); ++i) c.eta_G[i] += f.eta_G[i];
      }
      if (!c.is_zero(1e-12)) {
        c = c.normalized();
        if (!seen(c)) out.push_back(std::move(c));
      }
    }
  }
  return out;
}

namespace {

/// i-th element of the van der Corput sequence in the given base.
double radical_inverse(std::size_t i, unsigned base) {
  double inv = 1.0 / base, f = inv, r = 0.0;
  while (i > 0) {
    r += f * static_cast<double>(i % base);
    i /= base;
    f *= inv;
  }
  return r;
}

void normalize_l2(Point& p) {
  double s = 0.0;
  for (double v : p) s += v * v;
  s = std::sqrt(s);
  if (s > 0.0)
    for (double& v : p) v /= s;
}

}  // namespace

std::vector<Point> search_directions(std::size_t dim, const SearchConfig& cfg) {
  std::vector<Point> dirs;
  for (std::size_t i = 0; i < dim; ++i)
    for (double s : {1.0, -1.0}) {
      Point e(dim, 0.0);
      e[i] = s;
      dirs.push_back(std::move(e));
    }
  if (dim == 2) {
    for (std::size_t k = 0; k < cfg.sphere_directions; ++k) {
      const double th = 2.0 * std::numbers::pi * (static_cast<double>(k) + 0.5) /
                        static_cast<double>(cfg.sphere_directions);
      dirs.push_back({std::cos(th), std::sin(th)});
    }
  } else if (dim > 2) {
    static const unsigned kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};
    const std::size_t pairs = (dim + 1) / 2;
    if (2 * pairs > std::size(kPrimes)) throw InvalidArgument("too many dimensions for Halton");
    for (std::size_t k = 1; k <= cfg.sphere_directions; ++k) {
      Point p;
      for (std::size_t j = 0; j < pairs; ++j) {
        const double u1 = radical_inverse(k, kPrimes[2 * j]);
        const double u2 = radical_inverse(k, kPrimes[2 * j + 1]);
        const double r = std::sqrt(-2.0 * std::log(std::max(u1, 1e-300)));
        p.push_back(r * std::cos(2.0 * std::numbers::pi * u2));
        p.push_back(r * std::sin(2.0 * std::numbers::pi * u2));
      }
      p.resize(dim);
      normalize_l2(p);
      dirs.push_back(std::move(p));
    }
  }
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> normal;
  for (std::size_t k = 0; k < cfg.random_directions; ++k) {
    Point p(dim);
    for (double& v : p) v = normal(rng);
    normalize_l2(p);
    dirs.push_back(std::move(p));
  }
  return dirs;
}

namespace {

template <class Condition>
std::optional<SequenceWitness> find_sequence(const MpvcProblem& prob, std::span<const double> x,
                                             const std::vector<MultiplierVector>& mults,
                                             const SearchConfig& cfg, Condition&& holds) {
  std::vector<double> tail;
  for (double t : cfg.schedule)
    if (t <= cfg.tail_max) tail.push_back(t);
  if (tail.empty()) return std::nullopt;
  const auto dirs = search_directions(prob.dim(), cfg);
  Point y(prob.dim());
  for (const auto& m : mults) {
    for (const auto& d : dirs) {
      SequenceWitness w;
      bool ok = true;
      for (double t : tail) {
        for (std::size_t i = 0; i < y.size(); ++i) y[i] = x[i] + t * d[i];
        double value;
        if (!holds(m, y, value)) {
          ok = false;
          break;
        }
        w.ts.push_back(t);
        w.values.push_back(value);
      }
      if (ok) {
        w.multiplier = m;
        w.direction = d;
        return w;
      }
    }
  }
  return std::nullopt;
}

}  // namespace

CqVerdict refute_pseudonormality(const MpvcProblem& prob, std::span<const double> x,
                                 const IndexSets& sets, const SearchConfig& cfg) {
  CqVerdict v;
  v.name = CqName::Pseudonormality;
  const auto mults = candidate_multipliers(prob, x, sets, cfg.branch_cap);
  if (mults.empty()) {
    v.status = CqStatus::Certified;
    v.certificate = DowngradeCertificate{CqName::Gmfcq};
    v.notes = "no nonzero multiplier exists (GMFCQ holds), so pseudonormality holds";
    return v;
  }
  auto holds = [&](const MultiplierVector& m, const Point& y, double& value) {
    value = weighted_constraint_sum(prob, y, m);
    return value > cfg.pos_tol;
  };
  if (auto w = find_sequence(prob, x, mults, cfg, holds)) {
    v.status = CqStatus::Refuted;
    v.notes = "weighted constraint sum stays positive along a sequence";
    v.certificate = std::move(*w);
    return v;
  }
  v.status = CqStatus::NoViolationFound;
  v.notes = "searched " + std::to_string(mults.size()) + " multiplier(s)";
  return v;
}

CqVerdict refute_quasinormality(const MpvcProblem& prob, std::span<const double> x,
                                const IndexSets& sets, const SearchConfig& cfg) {
  CqVerdict v;
  v.name = CqName::Quasinormality;
  const auto mults = candidate_multipliers(prob, x, sets, cfg.branch_cap);
  if (mults.empty()) {
    v.status = CqStatus::Certified;
    v.certificate = DowngradeCertificate{CqName::Pseudonormality};
    v.notes = "pseudonormality holds, so quasinormality holds";
    return v;
  }
  auto holds = [&](const MultiplierVector& m, const Point& y, double& value) {
    value = weighted_constraint_sum(prob, y, m);
    return quasinormal_signs_hold(prob, y, m, cfg.pos_tol);
  };
  if (auto w = find_sequence(prob, x, mults, cfg, holds)) {
    v.status = CqStatus::Refuted;
    v.notes = "all component sign conditions hold along a sequence";
    v.certificate = std::move(*w);
    return v;
  }
  v.status = CqStatus::NoViolationFound;
  v.notes = "searched " + std::to_string(mults.size()) + " multiplier(s)";
  return v;
}

std::vector<ChainViolation> chain_violations(const std::vector<CqVerdict>& verdicts) {
  static const CqName kChain[] = {CqName::Licq, CqName::Mfcq, CqName::Gmfcq,
                                  CqName::Pseudonormality, CqName::Quasinormality};
  auto status_of = [&](CqName n) -> std::optional<CqStatus> {
    for (const auto& v : verdicts)
      if (v.name == n) return v.status;
    return std::nullopt;
  };
  std::vector<ChainViolation> out;
  for (std::size_t i = 0; i < std::size(kChain); ++i)
    for (std::size_t j = i + 1; j < std::size(kChain); ++j)
      if (status_of(kChain[i]) == CqStatus::Certified && status_of(kChain[j]) == CqStatus::Refuted)
        out.push_back({kChain[i], kChain[j]});
  return out;
}

const char* to_string(CqName n) {
  switch (n) {
    case CqName::Licq: return "MPVC-LICQ";
    case CqName::Mfcq: return "MPVC-MFCQ";
    case CqName::Gmfcq: return "MPVC-GMFCQ";
    case CqName::Pseudonormality: return "MPVC-generalized-pseudonormality";
    case CqName::Quasinormality: return "MPVC-generalized-quasinormality";
    case CqName::AcqMpvc: return "MPVC-ACQ";
    case CqName::AcqProduct: return "ACQ-product";
  }
  return "";
}

const char* to_string(CqStatus s) {
  switch (s) {
    case CqStatus::Certified: return "CERTIFIED";
    case CqStatus::Refuted: return "REFUTED";
    case CqStatus::NoViolationFound: return "NO-VIOLATION-FOUND";
  }
  return "";
}

const char* to_string(BiactiveBranch b) {
  return b == BiactiveBranch::HZero ? "eta_H=0" : "eta_G=0";
}

}  // namespace mpvc
