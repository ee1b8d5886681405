#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mpvc/cones.hpp"
#include "mpvc/cq.hpp"
#include "mpvc/generator.hpp"
#include "mpvc/solver.hpp"

namespace mpvc {

// ---------------------------------------------------------------------------
// Local error bound

struct ErrorBoundSample {
  Point x;
  double dist = 0.0;      // dist_C estimate (l1)
  double residual = 0.0;  // total constraint residual
  std::optional<double> ratio;
};

struct ScanConfig {
  double ratio_floor = 1e-10;
  /// c_hat above this counts as unbounded.
  double unbounded_threshold = 1e6;
  /// Grid oracle is used up to this dimension, penalty projection beyond.
  std::size_t grid_max_dim = 2;
  /// Grid step = radius / grid_divisions.
  std::size_t grid_divisions = 200;
};

struct ErrorBoundScan {
  Point center;
  double radius = 0.0;
  std::size_t sample_count = 0;
  std::uint64_t seed = 0;
  std::vector<ErrorBoundSample> samples;
  double c_hat = 0.0;
  bool unbounded_flag = false;
  /// True when dist_C comes from multistart projection rather than the grid.
  bool approximate = false;
  double grid_step = 0.0;
  /// Uncertainty of c_hat from the distance oracle: 2 * step / residual at
  /// the sample attaining c_hat.
  double error_bar = 0.0;
};

ErrorBoundScan scan_error_bound(const MpvcProblem& prob, std::span<const double> center,
                                double radius, std::size_t samples, std::uint64_t seed,
                                const ScanConfig& cfg = {});

/// Uniform sample from the l1 ball.
Point sample_l1_ball(std::mt19937_64& rng, std::span<const double> center, double radius);

// ---------------------------------------------------------------------------
// Penalty exactness

struct PenaltyRow {
  double alpha = 0.0;
  Point minimizer;
  double value = 0.0;
  double distance = 0.0;  // l1 distance to the reference point
  double residual = 0.0;
};

struct PenaltyProfile {
  Point center;
  std::vector<PenaltyRow> rows;
  double exact_tol = 1e-6;
  /// Least grid alpha from which every minimizer stays within exact_tol.
  std::optional<double> alpha_bar;
};

struct SweepConfig {
  SolveConfig inner;
  std::size_t random_starts = 8;
  double start_half_width = 0.5;
  double exact_tol = 1e-6;
  std::uint64_t seed = 1;
};

PenaltyProfile penalty_sweep(const MpvcProblem& prob, std::span<const double> center,
                             const std::vector<double>& alphas, const SweepConfig& cfg = {});

// ---------------------------------------------------------------------------
// Abadie-type condition probing

enum class AcqVerdict { Corroborated, Refuted };

struct AcqProbeConfig {
  TangentProbeConfig probe;
  /// When false, only directions in the MPVC linearized cone are probed,
  /// which is all a counterexample needs.
  bool probe_all = true;
};

struct AcqProbeReport {
  std::vector<ConeMembershipReport> directions;
  AcqVerdict acq_mpvc = AcqVerdict::Corroborated;
  AcqVerdict acq_product = AcqVerdict::Corroborated;
  std::vector<Point> mpvc_counterexamples;
  std::vector<Point> product_counterexamples;
};

/// count unit-l1 directions: evenly spaced angles in the plane, otherwise
/// seeded random directions after the signed axes.
std::vector<Point> acq_directions(std::size_t dim, std::size_t count, std::uint64_t seed);

AcqProbeReport probe_acq(const MpvcProblem& prob, std::span<const double> x,
                         const IndexSets& sets, const std::vector<Point>& directions,
                         const AcqProbeConfig& cfg = {});

// ---------------------------------------------------------------------------
// Combined analysis

struct FullReportConfig {
  SearchConfig search;
  AcqProbeConfig acq;
  std::size_t acq_direction_count = 360;
  std::uint64_t seed = 7;
};

struct CqReport {
  Point point;
  IndexSets sets;
  /// LICQ, MFCQ, GMFCQ, pseudonormality, quasinormality, ACQ (both forms).
  std::vector<CqVerdict> verdicts;
  std::vector<ChainViolation> chain;
  AcqProbeReport acq;
  /// Quasinormality not refuted while the MPVC Abadie condition is.
  std::vector<std::string> discrepancies;

  const CqVerdict& verdict(CqName name) const;
};

CqReport full_report(const MpvcProblem& prob, std::span<const double> x, const IndexSets& sets,
                     const FullReportConfig& cfg = {});

// ---------------------------------------------------------------------------
// Corpus audit

struct AuditConfig {
  GeneratorConfig generator;
  FullReportConfig report;
  AuditConfig();
};

struct AuditInstance {
  std::size_t index = 0;
  std::string name;
  std::vector<std::pair<CqName, CqStatus>> statuses;
  std::vector<ChainViolation> chain;
  std::size_t discrepancies = 0;
  std::size_t biactive = 0;
};

struct AuditReport {
  std::uint64_t seed = 0;
  std::vector<AuditInstance> instances;
  std::size_t chain_violations = 0;
  std::size_t discrepancies = 0;
};

AuditReport audit_corpus(const AuditConfig& cfg, std::uint64_t seed);

/// Audits explicit problems, each at its listed feasible point.
AuditReport audit_problems(const std::vector<std::pair<MpvcProblem, Point>>& corpus,
                           const FullReportConfig& cfg);

const char* to_string(AcqVerdict v);

}  // namespace mpvc
