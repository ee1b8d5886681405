#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mpvc/empirics.hpp"

namespace mpvc {

inline constexpr int kSchemaVersion = 1;

/// Everything one CLI command produces.
struct Report {
  std::string tool_version = MPVC_VERSION;
  std::string command;
  std::string problem;
  std::vector<std::string> variables;
  Point point;
  std::uint64_t seed = 0;
  /// Wall-clock time of the run; the only field that may differ between
  /// identical invocations.
  std::string timestamp;

  std::optional<CqReport> analysis;
  std::optional<AcqProbeReport> acq;
  std::optional<PenaltyProfile> penalty;
  std::optional<ErrorBoundScan> scan;
  std::optional<SolveResult> solve;
  std::optional<AuditReport> audit;
};

using json = nlohmann::json;

void to_json(json& j, const IndexSets& s);
void from_json(const json& j, IndexSets& s);
void to_json(json& j, const MultiplierVector& m);
void from_json(const json& j, MultiplierVector& m);
void to_json(json& j, const CqVerdict& v);
void from_json(const json& j, CqVerdict& v);
void to_json(json& j, const ChainViolation& c);
void from_json(const json& j, ChainViolation& c);
void to_json(json& j, const ProbeSample& s);
void from_json(const json& j, ProbeSample& s);
void to_json(json& j, const ConeMembershipReport& c);
void from_json(const json& j, ConeMembershipReport& c);
void to_json(json& j, const AcqProbeReport& r);
void from_json(const json& j, AcqProbeReport& r);
void to_json(json& j, const CqReport& r);
void from_json(const json& j, CqReport& r);
void to_json(json& j, const ErrorBoundScan& s);
void from_json(const json& j, ErrorBoundScan& s);
void to_json(json& j, const PenaltyProfile& p);
void from_json(const json& j, PenaltyProfile& p);
void to_json(json& j, const SolveResult& r);
void from_json(const json& j, SolveResult& r);
void to_json(json& j, const AuditReport& r);
void from_json(const json& j, AuditReport& r);
void to_json(json& j, const Report& r);
/// Throws InvalidArgument on an unknown schema version.
void from_json(const json& j, Report& r);

/// Human-readable rendering; index sets and points use 1-based indices and
/// the I_00 style names.
std::string render_text(const Report& r);

std::string format_index_set(const std::vector<std::size_t>& set);

}  // namespace mpvc
