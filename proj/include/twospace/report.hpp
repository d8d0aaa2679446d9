#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "twospace/adversary.hpp"
#include "twospace/analysis.hpp"
#include "twospace/montecarlo.hpp"
#include "twospace/scheme.hpp"

namespace twospace {

inline constexpr const char* kToolVersion = "twospace 0.1.0";

/// FNV-1a 64-bit content hash, rendered as "fnv1a64:<16 hex digits>".
std::string content_digest(const std::string& bytes);

enum class OutputFormat { Human, Json, Csv };

/// Everything `analyze` computes for one scheme file. When validation
/// fails, only the validation list is populated.
struct AnalysisReport {
  std::string tool_version = kToolVersion;
  std::string scheme_name;
  std::string input_digest;
  std::vector<std::string> validation;

  std::optional<OverlapAnalysis> overlap;
  std::optional<ReceiverSuccess> receiver;
  std::map<std::string, Rational> transcript_prob;
  std::map<std::string, FiniteDist> bit_posteriors;
  std::vector<AttackReport> attacks;
  std::optional<ConditionCheck> conditions;
  std::vector<std::string> notes; // e.g. why the condition check is absent

  bool valid() const { return validation.empty(); }
};

/// Runs validation and, if it passes, the full analysis for the requested
/// strategies. Never throws on validation failures; those land in the
/// report.
AnalysisReport analyze_scheme(const SchemeInstance& s,
                              const std::vector<StrategySpec>& strategies,
                              const std::string& input_digest);

std::string render_analysis(const AnalysisReport& r, OutputFormat format);

/// Rendering for `simulate`.
std::string render_simulation(const SchemeInstance& s, const StrategySpec& spec,
                              const SimResult& result, OutputFormat format);

} // namespace twospace
