#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "mpvc/model.hpp"

namespace mpvc {

struct GeneratorConfig {
  std::size_t instances = 200;
  std::size_t max_dim = 3;
  unsigned max_degree = 3;
  std::size_t max_g = 2;
  std::size_t max_h = 2;
  std::size_t max_vc = 2;
  std::size_t max_terms = 3;
  int coef_range = 3;
};

/// Engine for instance `index` of a corpus drawn with `seed`; independent of
/// how many instances precede it.
std::mt19937_64 instance_rng(std::uint64_t seed, std::size_t index);

/// Random polynomial MPVC, feasible at the origin. Each constant term is
/// chosen to make its constraint active or inactive there, and every other
/// instance has at least one biactive pair.
MpvcProblem generate_instance(const GeneratorConfig& cfg, std::uint64_t seed, std::size_t index);

/// Problem text for the same instance (what generate_instance parses).
std::string generate_instance_text(const GeneratorConfig& cfg, std::uint64_t seed,
                                   std::size_t index);

struct ExprGenConfig {
  std::size_t max_depth = 4;
  /// Allow abs/min/max nodes.
  bool nonsmooth = false;
  /// Allow division (denominators are kept away from zero).
  bool division = true;
  int coef_range = 5;
};

/// Random expression tree over the given number of variables.
Expr random_expr(std::mt19937_64& rng, std::size_t dim, const ExprGenConfig& cfg = {});

}  // namespace mpvc
