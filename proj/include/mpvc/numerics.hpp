#pragma once

#include <cstddef>
#include <limits>
#include <vector>

namespace mpvc {

/// Row-major dense matrix.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  static DenseMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  DenseMatrix transposed() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Numerical rank by Gaussian elimination with partial pivoting. Pivots of
/// magnitude <= tol * max|entry| count as zero.
std::size_t rank(const DenseMatrix& m, double tol = 1e-10);

enum class Relation { LessEq, Equal, GreaterEq };

struct LpBound {
  /// Either 0 or -infinity.
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
};

/// maximize c.x  s.t.  A x (rel) b,  bounds on x.
struct LpProblem {
  std::vector<double> objective;
  std::vector<std::vector<double>> rows;
  std::vector<Relation> relations;
  std::vector<double> rhs;
  /// Empty means every variable is nonnegative.
  std::vector<LpBound> bounds;

  std::size_t num_vars() const { return objective.size(); }
  void add_row(std::vector<double> coeffs, Relation rel, double b);
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpOutcome {
  LpStatus status = LpStatus::Infeasible;
  double value = 0.0;
  std::vector<double> x;
};

/// Two-phase dense simplex with Bland's rule. Deterministic.
LpOutcome solve_lp(const LpProblem& p);

inline constexpr double kFree = -std::numeric_limits<double>::infinity();

}  // namespace mpvc
