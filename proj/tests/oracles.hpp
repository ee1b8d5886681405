#pragma once

// Brute-force reference computations. Deliberately naive and independent of
// the library code paths they check.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

namespace oracle {

/// l1 distance from (a, b) to {b >= 0, ab <= 0} by scanning a grid on the
/// set's boundary (the a-axis and the ray a = 0, b >= 0). Points of the set
/// itself are at distance zero; otherwise the nearest point lies on the
/// boundary.
inline double grid_dist_omega(double a, double b, double half_width, double step) {
  if (b >= 0.0 && a * b <= 0.0) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  const long count = std::lround(half_width / step);
  for (long k = -count; k <= count; ++k) {
    const double s = static_cast<double>(k) * step;
    best = std::min(best, std::fabs(a - s) + std::fabs(b));  // (s, 0)
    if (k >= 0) best = std::min(best, std::fabs(a) + std::fabs(b - s));  // (0, s)
  }
  return best;
}

/// Central finite-difference gradient.
inline std::vector<double> fd_gradient(const std::function<double(const std::vector<double>&)>& f,
                                       std::vector<double> x, double h) {
  std::vector<double> g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xi = x[i];
    x[i] = xi + h;
    const double up = f(x);
    x[i] = xi - h;
    const double down = f(x);
    x[i] = xi;
    g[i] = (up - down) / (2.0 * h);
  }
  return g;
}

/// Solves a square system by Gaussian elimination; nullopt if singular.
inline std::optional<std::vector<double>> solve_square(std::vector<std::vector<double>> a,
                                                       std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::fabs(a[r][c]) > std::fabs(a[p][c])) p = r;
    if (std::fabs(a[p][c]) < 1e-12) return std::nullopt;
    std::swap(a[p], a[c]);
    std::swap(b[p], b[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] /= a[i][i];
  return b;
}

/// max c.x s.t. A x <= b, x >= 0, by enumerating every vertex: each choice
/// of n tight constraints among the rows of A and the bounds x_i >= 0.
/// Returns nullopt if no vertex is feasible. Bounded problems only.
inline std::optional<double> vertex_enumeration_max(const std::vector<double>& c,
                                                    const std::vector<std::vector<double>>& A,
                                                    const std::vector<double>& b) {
  const std::size_t n = c.size();
  std::vector<std::vector<double>> rows = A;
  std::vector<double> rhs = b;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> r(n, 0.0);
    r[i] = -1.0;
    rows.push_back(r);
    rhs.push_back(0.0);
  }
  const std::size_t total = rows.size();
  std::optional<double> best;
  std::vector<std::size_t> pick(n);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t depth, std::size_t from) {
    if (depth == n) {
      std::vector<std::vector<double>> sa;
      std::vector<double> sb;
      for (std::size_t k : pick) {
        sa.push_back(rows[k]);
        sb.push_back(rhs[k]);
      }
      const auto x = solve_square(sa, sb);
      if (!x) return;
      for (std::size_t r = 0; r < total; ++r) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += rows[r][i] * (*x)[i];
        if (s > rhs[r] + 1e-9) return;
      }
      double v = 0.0;
      for (std::size_t i = 0; i < n; ++i) v += c[i] * (*x)[i];
      if (!best || v > *best) best = v;
      return;
    }
    for (std::size_t k = from; k < total; ++k) {
      pick[depth] = k;
      rec(depth + 1, k + 1);
    }
  };
  rec(0, 0);
  return best;
}

struct GridArgmin {
  double x1 = 0.0;
  double x2 = 0.0;
  double value = std::numeric_limits<double>::infinity();
};

/// Minimum of f over a (count x count) grid on [lo, hi]^2.
inline GridArgmin grid_argmin_2d(const std::function<double(double, double)>& f, double lo,
                                 double hi, int count) {
  GridArgmin best;
  const double step = (hi - lo) / (count - 1);
  for (int i = 0; i < count; ++i)
    for (int j = 0; j < count; ++j) {
      const double a = lo + i * step, b = lo + j * step;
      const double v = f(a, b);
      if (v < best.value) best = {a, b, v};
    }
  return best;
}

}  // namespace oracle
