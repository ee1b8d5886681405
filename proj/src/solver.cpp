#include "mpvc/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>

#include "mpvc/penalty.hpp"

namespace mpvc {

namespace {

/// Probe offsets in a fixed order: +e_i, -e_i for each coordinate, then the
/// four sign patterns of each coordinate pair.
std::vector<std::vector<std::pair<std::size_t, double>>> probe_pattern(std::size_t n,
                                                                      bool diagonals) {
  std::vector<std::vector<std::pair<std::size_t, double>>> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back({{i, 1.0}});
    out.push_back({{i, -1.0}});
  }
  if (diagonals)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        for (double si : {1.0, -1.0})
          for (double sj : {1.0, -1.0}) out.push_back({{i, si}, {j, sj}});
  return out;
}

bool lex_less(const Point& a, const Point& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

DirectSearchResult direct_search(const Objective& fn, Point start, const DirectSearchConfig& cfg) {
  if (!(cfg.initial_step > 0.0) || !(cfg.stop_step > 0.0))
    throw InvalidArgument("direct search steps must be positive");
  if (!(cfg.shrink > 0.0 && cfg.shrink < 1.0))
    throw InvalidArgument("direct search shrink factor must lie in (0, 1)");

  DirectSearchResult res;
  res.point = std::move(start);
  res.value = fn(res.point);
  if (std::isnan(res.value)) throw EvalError("objective is NaN at the start point");
  const auto pattern = probe_pattern(res.point.size(), cfg.diagonal_probes);

  double step = cfg.initial_step;
  Point trial(res.point.size());
  Point best_trial;
  while (step > cfg.stop_step && res.iterations < cfg.max_iterations) {
    ++res.iterations;
    double best = res.value;
    bool improved = false;
    for (const auto& offset : pattern) {
      trial = res.point;
      for (const auto& [i, s] : offset) trial[i] += s * step;
      double v;
      try {
        v = fn(trial);
      } catch (const EvalError&) {
        // Evaluation failure ends this search at the best point so far.
        return res;
      }
      if (v < best) {
        best = v;
        best_trial = trial;
        improved = true;
      }
    }
    if (improved) {
      res.point = best_trial;
      res.value = best;
    } else {
      step *= cfg.shrink;
    }
  }
  res.converged = step <= cfg.stop_step;
  return res;
}

std::vector<Point> solve_starts(const SolveConfig& cfg, std::size_t dim) {
  if (!cfg.starts.empty()) {
    for (const auto& s : cfg.starts)
      if (s.size() != dim) throw InvalidArgument("start point has the wrong dimension");
    return cfg.starts;
  }
  Point center = cfg.box_center.empty() ? Point(dim, 0.0) : cfg.box_center;
  if (center.size() != dim) throw InvalidArgument("box center has the wrong dimension");
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<Point> starts;
  for (std::size_t k = 0; k < cfg.num_starts; ++k) {
    Point p(dim);
    for (std::size_t i = 0; i < dim; ++i) p[i] = center[i] + cfg.box_half_width * unit(rng);
    starts.push_back(std::move(p));
  }
  return starts;
}

SolveResult minimize_penalty(const MpvcProblem& prob, double alpha, const SolveConfig& cfg) {
  if (!(alpha >= 0.0)) throw InvalidArgument("penalty parameter must be nonnegative");
  DirectSearchConfig ds;
  ds.initial_step = cfg.initial_step;
  ds.shrink = cfg.shrink;
  ds.stop_step = cfg.stop_step;
  ds.max_iterations = cfg.max_iterations;

  const Objective fn = [&](std::span<const double> x) {
    return penalty_tailored(prob, x, alpha).total;
  };

  std::optional<SolveResult> best;
  for (const auto& start : solve_starts(cfg, prob.dim())) {
    DirectSearchResult r;
    try {
      r = direct_search(fn, start, ds);
    } catch (const EvalError&) {
      continue;
    }
    const bool better = !best || r.value < best->value ||
                        (r.value == best->value && lex_less(r.point, best->point));
    if (better) {
      SolveResult s;
      s.point = r.point;
      s.value = r.value;
      s.alpha = alpha;
      s.converged = r.converged;
      s.iterations = (best ? best->iterations : 0) + r.iterations;
      best = std::move(s);
    } else {
      best->iterations += r.iterations;
    }
  }
  if (!best) throw EvalError("penalty function could not be evaluated at any start point");
  best->residual = residual_total(prob, best->point);
  return *best;
}

SolveResult solve_mpvc(const MpvcProblem& prob, const SolveConfig& cfg) {
  if (cfg.alpha_schedule.empty()) throw InvalidArgument("alpha schedule must not be empty");
  for (std::size_t i = 1; i < cfg.alpha_schedule.size(); ++i)
    if (!(cfg.alpha_schedule[i] > cfg.alpha_schedule[i - 1]))
      throw InvalidArgument("alpha schedule must be strictly increasing");

  SolveConfig stage = cfg;
  SolveResult result;
  std::size_t iterations = 0;
  for (double alpha : cfg.alpha_schedule) {
    result = minimize_penalty(prob, alpha, stage);
    iterations += result.iterations;
    if (result.residual <= cfg.feas_tol) break;
    stage.starts = {result.point};
  }
  result.iterations = iterations;
  result.converged = result.residual <= cfg.feas_tol;
  return result;
}

}  // namespace mpvc
