#include "mpvc/numerics.hpp"

#include <algorithm>
#include <cmath>

#include "mpvc/errors.hpp"

namespace mpvc {

DenseMatrix DenseMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  DenseMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw InvalidArgument("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

DenseMatrix DenseMatrix::transposed() const {
  DenseMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

std::size_t rank(const DenseMatrix& m, double tol) {
  if (!(tol > 0.0)) throw InvalidArgument("rank tolerance must be positive");
  if (m.rows() == 0 || m.cols() == 0) return 0;
  DenseMatrix a = m;
  double scale = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) scale = std::max(scale, std::fabs(a(r, c)));
  if (scale == 0.0) return 0;
  const double cutoff = tol * scale;

  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t pivot = row;
    for (std::size_t r = row + 1; r < a.rows(); ++r)
      if (std::fabs(a(r, col)) > std::fabs(a(pivot, col))) pivot = r;
    if (std::fabs(a(pivot, col)) <= cutoff) continue;
    if (pivot != row)
      for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(pivot, c), a(row, c));
    for (std::size_t r = row + 1; r < a.rows(); ++r) {
      const double factor = a(r, col) / a(row, col);
      if (factor == 0.0) continue;
      for (std::size_t c = col; c < a.cols(); ++c) a(r, c) -= factor * a(row, c);
    }
    ++row;
  }
  return row;
}

void LpProblem::add_row(std::vector<double> coeffs, Relation rel, double b) {
  rows.push_back(std::move(coeffs));
  relations.push_back(rel);
  rhs.push_back(b);
}

namespace {

constexpr double kPivotEps = 1e-12;
constexpr double kCostEps = 1e-11;
constexpr double kFeasEps = 1e-9;
constexpr std::size_t kMaxIterations = 100000;

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), t_((rows) * (cols + 1), 0.0), basis_(rows, 0) {}

  double& at(std::size_t r, std::size_t c) { return t_[r * (cols_ + 1) + c]; }
  double at(std::size_t r, std::size_t c) const { return t_[r * (cols_ + 1) + c]; }
  double& rhs(std::size_t r) { return at(r, cols_); }
  double rhs(std::size_t r) const { return at(r, cols_); }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t pr, std::size_t pc) {
    const double p = at(pr, pc);
    for (std::size_t c = 0; c <= cols_; ++c) at(pr, c) /= p;
    at(pr, pc) = 1.0;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == pr) continue;
      const double f = at(r, pc);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c <= cols_; ++c) at(r, c) -= f * at(pr, c);
      at(r, pc) = 0.0;
    }
    basis_[pr] = pc;
  }

  void drop_row(std::size_t r) {
    t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(r * (cols_ + 1)),
             t_.begin() + static_cast<std::ptrdiff_t>((r + 1) * (cols_ + 1)));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
    --rows_;
  }

  /// Maximizes cost.x over the current basis. Columns with allowed[c] false
  /// never enter. Returns false if unbounded.
  bool optimize(const std::vector<double>& cost, const std::vector<bool>& allowed) {
    for (std::size_t it = 0; it < kMaxIterations; ++it) {
      std::size_t enter = cols_;
      for (std::size_t c = 0; c < cols_; ++c) {
        if (!allowed[c]) continue;
        double d = cost[c];
        for (std::size_t r = 0; r < rows_; ++r) d -= cost[basis_[r]] * at(r, c);
        if (d > kCostEps) {
          enter = c;
          break;
        }
      }
      if (enter == cols_) return true;
      std::size_t leave = rows_;
      double best = 0.0;
      for (std::size_t r = 0; r < rows_; ++r) {
        const double a = at(r, enter);
        if (a <= kPivotEps) continue;
        const double ratio = rhs(r) / a;
        if (leave == rows_ || ratio < best - 1e-14 ||
            (ratio <= best + 1e-14 && basis_[r] < basis_[leave])) {
          leave = r;
          best = ratio;
        }
      }
      if (leave == rows_) return false;
      pivot(leave, enter);
    }
    throw Error("simplex iteration limit exceeded");
  }

  double value(const std::vector<double>& cost) const {
    double v = 0.0;
    for (std::size_t r = 0; r < rows_; ++r) v += cost[basis_[r]] * rhs(r);
    return v;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> t_;
  std::vector<std::size_t> basis_;
};

}  // namespace

LpOutcome solve_lp(const LpProblem& p) {
  const std::size_t n = p.num_vars();
  if (p.rows.size() != p.relations.size() || p.rows.size() != p.rhs.size())
    throw InvalidArgument("LP row, relation and rhs counts differ");
  // No bounds at all means x >= 0 throughout.
  const std::vector<LpBound> bounds = p.bounds.empty() ? std::vector<LpBound>(n) : p.bounds;
  if (bounds.size() != n) throw InvalidArgument("LP needs one bound per variable");
  for (const auto& r : p.rows)
    if (r.size() != n) throw InvalidArgument("LP row length differs from variable count");

  // Map each variable to one column (x >= 0) or a +/- pair (free).
  std::vector<std::size_t> pos(n), neg(n, SIZE_MAX);
  std::size_t ncols = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const auto& b = bounds[j];
    if (b.lower != 0.0 && b.lower != kFree)
      throw InvalidArgument("LP lower bounds must be 0 or -infinity");
    if (!(b.upper >= b.lower)) throw InvalidArgument("LP upper bound below lower bound");
    pos[j] = ncols++;
    if (b.lower == kFree) neg[j] = ncols++;
  }

  struct Row {
    std::vector<double> a;
    Relation rel;
    double b;
  };
  std::vector<Row> rows;
  auto expand = [&](const std::vector<double>& coeffs) {
    std::vector<double> a(ncols, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      a[pos[j]] += coeffs[j];
      if (neg[j] != SIZE_MAX) a[neg[j]] -= coeffs[j];
    }
    return a;
  };
  for (std::size_t i = 0; i < p.rows.size(); ++i)
    rows.push_back({expand(p.rows[i]), p.relations[i], p.rhs[i]});
  for (std::size_t j = 0; j < n; ++j) {
    if (!std::isfinite(bounds[j].upper)) continue;
    std::vector<double> e(n, 0.0);
    e[j] = 1.0;
    rows.push_back({expand(e), Relation::LessEq, bounds[j].upper});
  }
  for (auto& r : rows) {
    if (r.b < 0.0) {
      for (double& v : r.a) v = -v;
      r.b = -r.b;
      if (r.rel == Relation::LessEq)
        r.rel = Relation::GreaterEq;
      else if (r.rel == Relation::GreaterEq)
        r.rel = Relation::LessEq;
    }
  }

  std::size_t nslack = 0, nart = 0;
  for (const auto& r : rows) {
    if (r.rel != Relation::Equal) ++nslack;
    if (r.rel != Relation::LessEq) ++nart;
  }
  const std::size_t total = ncols + nslack + nart;
  Tableau t(rows.size(), total);
  std::vector<bool> is_art(total, false);
  {
    std::size_t s = ncols, a = ncols + nslack;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (std::size_t c = 0; c < ncols; ++c) t.at(i, c) = rows[i].a[c];
      t.rhs(i) = rows[i].b;
      switch (rows[i].rel) {
        case Relation::LessEq:
          t.at(i, s) = 1.0;
          t.basis()[i] = s++;
          break;
        case Relation::GreaterEq:
          t.at(i, s++) = -1.0;
          t.at(i, a) = 1.0;
          is_art[a] = true;
          t.basis()[i] = a++;
          break;
        case Relation::Equal:
          t.at(i, a) = 1.0;
          is_art[a] = true;
          t.basis()[i] = a++;
          break;
      }
    }
  }

  LpOutcome out;
  std::vector<bool> allowed(total, true);
  if (nart > 0) {
    std::vector<double> phase1(total, 0.0);
    for (std::size_t c = 0; c < total; ++c)
      if (is_art[c]) phase1[c] = -1.0;
    t.optimize(phase1, allowed);
    if (-t.value(phase1) > kFeasEps) {
      out.status = LpStatus::Infeasible;
      return out;
    }
    // Drive remaining (zero-level) artificials out of the basis.
    for (std::size_t r = 0; r < t.rows();) {
      if (!is_art[t.basis()[r]]) {
        ++r;
        continue;
      }
      std::size_t col = total;
      for (std::size_t c = 0; c < total; ++c)
        if (!is_art[c] && std::fabs(t.at(r, c)) > 1e-9) {
          col = c;
          break;
        }
      if (col == total) {
        t.drop_row(r);
      } else {
        t.pivot(r, col);
        ++r;
      }
    }
    for (std::size_t c = 0; c < total; ++c) allowed[c] = !is_art[c];
  }

  std::vector<double> cost(total, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    cost[pos[j]] += p.objective[j];
    if (neg[j] != SIZE_MAX) cost[neg[j]] -= p.objective[j];
  }
  if (!t.optimize(cost, allowed)) {
    out.status = LpStatus::Unbounded;
    return out;
  }

  std::vector<double> col_value(total, 0.0);
  for (std::size_t r = 0; r < t.rows(); ++r) col_value[t.basis()[r]] = std::max(0.0, t.rhs(r));
  out.status = LpStatus::Optimal;
  out.x.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    out.x[j] = col_value[pos[j]];
    if (neg[j] != SIZE_MAX) out.x[j] -= col_value[neg[j]];
    out.value += p.objective[j] * out.x[j];
  }
  return out;
}

}  // namespace mpvc
