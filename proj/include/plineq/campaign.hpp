#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "plineq/generators.hpp"
#include "plineq/inequalities.hpp"
#include "plineq/serialize.hpp"

namespace plineq {

enum class CampaignMode { verify, falsify, replay, sharpness };
enum class Arithmetic { rational, floating };

std::string_view to_string(CampaignMode m);
std::string_view to_string(Arithmetic a);
std::optional<CampaignMode> parse_mode(std::string_view s);
std::optional<Arithmetic> parse_arithmetic(std::string_view s);

/// Everything that determines a run. Two runs with equal campaigns write
/// identical reports apart from the wall-time field; the worker count is
/// deliberately not part of it.
struct Campaign {
  CampaignMode mode = CampaignMode::verify;
  std::vector<InequalityKind> inequalities;  // empty: mode default
  GenConfig generator;                       // seed is overridden per trial
  std::uint64_t trials = 1000;
  Arithmetic arithmetic = Arithmetic::rational;
  std::optional<Rational> tolerance;  // default: 0 rational, 1e-9 float
  std::string output_path;
  std::uint64_t seed = 0;
  std::uint64_t budget = 10000;  // falsify: iterations per search
  int search_breakpoints = 9;    // falsify
  std::uint64_t weights = 5;     // sharpness: random p per run
  std::string case_path;         // replay

  void validate() const;
};

/// Strict parse: unknown keys and wrong types raise ParseError naming the field.
Campaign campaign_from_json(const Json& j, const std::string& source = "campaign");
Json to_json(const Campaign& c);

struct InequalityAggregate {
  InequalityKind inequality;
  std::uint64_t trials = 0;
  std::uint64_t passes = 0;
  std::uint64_t failures = 0;
  /// Trials whose generated inputs failed a hypothesis (expected 0).
  std::uint64_t inadmissible = 0;
  std::optional<Rational> min_margin;
  std::uint64_t min_margin_trial = 0;
};

struct RunReport {
  Campaign campaign;
  std::vector<InequalityAggregate> aggregates;
  /// Extremal and failing cases, each self-contained and replayable.
  Json cases = Json::array();
  /// Mode-specific sections (necessity table, equality checks).
  Json sections = Json::object();
  double wall_time_seconds = 0.0;
  /// 0: expectations met, 1: expectation mismatch.
  int exit_code = 0;

  Json to_json() const;
};

RunReport run_verify(const Campaign& campaign, unsigned workers = 1);
RunReport run_falsify(const Campaign& campaign, unsigned workers = 1);
RunReport run_sharpness(const Campaign& campaign, unsigned workers = 1);

struct ReplayOutcome {
  InequalityVerdict<Rational> verdict;
  std::optional<Rational> recorded_margin;
  std::string recorded_arithmetic;
  /// Recorded margin matched: exactly for rational records, within
  /// 1e-12 (relative to max(1, |margin|)) for float records.
  bool reproduced = true;

  Json to_json() const;
};

/// Re-evaluates a serialized case in rational arithmetic.
ReplayOutcome run_replay(const std::string& case_file);

/// Dispatches on campaign.mode (replay is not a report-producing mode).
RunReport run_campaign(const Campaign& campaign, unsigned workers = 1);

/// Writes the report; throws std::runtime_error if the path is unwritable.
void write_report(const RunReport& report, const std::string& path);

/// Worker count from PLINEQ_WORKERS, else 1.
unsigned default_workers();

}  // namespace plineq
