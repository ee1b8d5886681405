#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "mpvc/model.hpp"

namespace mpvc {

struct DirectSearchConfig {
  double initial_step = 0.25;
  double shrink = 0.5;
  double stop_step = 1e-9;
  std::size_t max_iterations = 5000;
  /// Also poll the +/- pairwise diagonals.
  bool diagonal_probes = true;
};

struct DirectSearchResult {
  Point point;
  double value = 0.0;
  std::size_t iterations = 0;
  bool converged = false;  // step fell below stop_step
};

using Objective = std::function<double(std::span<const double>)>;

/// Compass search: poll every probe, move to the best strict decrease (first
/// in probe order on ties), shrink the step when nothing decreases.
DirectSearchResult direct_search(const Objective& fn, Point start,
                                 const DirectSearchConfig& cfg);

struct SolveConfig {
  /// Explicit starting points; when empty, `num_starts` points are drawn
  /// uniformly from the box center +/- box_half_width.
  std::vector<Point> starts;
  std::size_t num_starts = 8;
  Point box_center;  // defaults to the origin
  double box_half_width = 1.0;
  std::uint64_t seed = 1;

  std::size_t max_iterations = 5000;
  double initial_step = 0.25;
  double shrink = 0.5;
  double stop_step = 1e-9;

  std::vector<double> alpha_schedule{0.1, 1.0, 10.0, 100.0};
  double feas_tol = 1e-8;
};

struct SolveResult {
  Point point;
  double value = 0.0;
  double residual = 0.0;
  double alpha = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

/// Starting points a SolveConfig describes, in order.
std::vector<Point> solve_starts(const SolveConfig& cfg, std::size_t dim);

/// Minimizes the tailored penalty function for one alpha from every start.
SolveResult minimize_penalty(const MpvcProblem& prob, double alpha, const SolveConfig& cfg);

/// Penalty continuation along cfg.alpha_schedule, warm-starting each stage.
SolveResult solve_mpvc(const MpvcProblem& prob, const SolveConfig& cfg);

}  // namespace mpvc
