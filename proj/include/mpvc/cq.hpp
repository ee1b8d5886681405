#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "mpvc/model.hpp"
#include "mpvc/numerics.hpp"

namespace mpvc {

/// Which side of a biactive pair is forced to zero.
enum class BiactiveBranch { HZero, GZero };

/// (lambda, mu, eta_H, eta_G) over the full index ranges.
struct MultiplierVector {
  std::vector<double> lambda;
  std::vector<double> mu;
  std::vector<double> eta_H;
  std::vector<double> eta_G;
  std::map<std::size_t, BiactiveBranch> branch;

  double l1_norm() const;
  bool is_zero(double tol = 0.0) const;
  /// Scaled copy with unit l1 norm (unchanged if zero).
  MultiplierVector normalized() const;
};

/// || sum lambda grad g + sum mu grad h + sum eta_G grad G - sum eta_H grad H ||_1.
double stationarity_residual(const MpvcProblem& prob, std::span<const double> x,
                             const MultiplierVector& mult);

/// Sign pattern shared by the multiplier-based conditions: lambda >= 0 on
/// I_g and 0 elsewhere; eta_G = 0 on I_+- u I_0- u I_0+ and >= 0 on
/// I_+0 u I_00; eta_H = 0 on I_+, >= 0 on I_0-, free on I_0+ and I_00;
/// eta_H * eta_G = 0 on I_00 unless `complementarity` is false.
bool satisfies_sign_pattern(const IndexSets& sets, const MultiplierVector& mult,
                            bool complementarity = true, double tol = 0.0);

/// sum lambda g(y) + sum mu h(y) + sum eta_G G(y) - sum eta_H H(y).
double weighted_constraint_sum(const MpvcProblem& prob, std::span<const double> y,
                               const MultiplierVector& mult);

/// Every per-component sign condition of generalized quasinormality at y.
bool quasinormal_signs_hold(const MpvcProblem& prob, std::span<const double> y,
                            const MultiplierVector& mult, double pos_tol,
                            double active_tol = 1e-12);

enum class CqName { Licq, Mfcq, Gmfcq, Pseudonormality, Quasinormality, AcqMpvc, AcqProduct };
enum class CqStatus { Certified, Refuted, NoViolationFound };

struct RankCertificate {
  std::size_t rows = 0;
  std::size_t rank = 0;
  std::vector<std::vector<double>> gradients;
  /// Which stage a failing MFCQ check stopped at, empty otherwise.
  std::string stage;
};

struct DirectionCertificate {
  Point d;
  double slack = 0.0;
};

struct SequenceWitness {
  MultiplierVector multiplier;
  Point direction;
  std::vector<double> ts;
  std::vector<double> values;  // weighted sum at x + t d, for each t
};

/// Only CERTIFIED via implication from a stronger condition.
struct DowngradeCertificate {
  CqName from = CqName::Gmfcq;
};

using Certificate = std::variant<std::monostate, RankCertificate, DirectionCertificate,
                                 MultiplierVector, SequenceWitness, DowngradeCertificate>;

struct CqVerdict {
  CqName name = CqName::Licq;
  CqStatus status = CqStatus::Refuted;
  Certificate certificate;
  std::string notes;
  /// Optimum of the LP that decided the verdict, where one did.
  std::optional<double> lp_value;
};

inline constexpr double kEpsStrict = 1e-9;
inline constexpr std::size_t kDefaultBranchCap = 16;

struct BranchResult {
  std::map<std::size_t, BiactiveBranch> branch;
  LpOutcome lp;
  std::optional<MultiplierVector> multiplier;
};

CqVerdict check_licq(const MpvcProblem& prob, std::span<const double> x, const IndexSets& sets);
CqVerdict check_mfcq(const MpvcProblem& prob, std::span<const double> x, const IndexSets& sets);

/// One LP per complementarity branch of I_00, asking for a unit-l1 multiplier
/// satisfying stationarity and the sign pattern.
std::vector<BranchResult> enumerate_multiplier_branches(const MpvcProblem& prob,
                                                        std::span<const double> x,
                                                        const IndexSets& sets,
                                                        std::size_t branch_cap = kDefaultBranchCap);

CqVerdict check_gmfcq(const MpvcProblem& prob, std::span<const double> x, const IndexSets& sets,
                      std::size_t branch_cap = kDefaultBranchCap);

struct SearchConfig {
  std::size_t sphere_directions = 64;
  std::size_t random_directions = 16;
  std::vector<double> schedule{1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
  /// Sequence points with t at or below this form the tail that must violate.
  double tail_max = 1e-3;
  double pos_tol = 1e-14;
  std::uint64_t seed = 7;
  std::size_t branch_cap = kDefaultBranchCap;
};

/// Unit-l1 vertices of the branch multiplier polytopes (extreme rays of the
/// multiplier cone), deduplicated, plus per-branch centroids.
std::vector<MultiplierVector> candidate_multipliers(const MpvcProblem& prob,
                                                    std::span<const double> x,
                                                    const IndexSets& sets,
                                                    std::size_t branch_cap = kDefaultBranchCap);

/// Deterministic search directions: low-discrepancy unit vectors, the
/// coordinate axes with both signs, and seeded random unit vectors.
std::vector<Point> search_directions(std::size_t dim, const SearchConfig& cfg);

CqVerdict refute_pseudonormality(const MpvcProblem& prob, std::span<const double> x,
                                 const IndexSets& sets, const SearchConfig& cfg = {});
CqVerdict refute_quasinormality(const MpvcProblem& prob, std::span<const double> x,
                                const IndexSets& sets, const SearchConfig& cfg = {});

struct ChainViolation {
  CqName stronger;
  CqName weaker;
};

/// Pairs along LICQ => MFCQ => GMFCQ => pseudonormality => quasinormality
/// where the stronger is CERTIFIED and the weaker REFUTED.
std::vector<ChainViolation> chain_violations(const std::vector<CqVerdict>& verdicts);

const char* to_string(CqName n);
const char* to_string(CqStatus s);
const char* to_string(BiactiveBranch b);

}  // namespace mpvc
