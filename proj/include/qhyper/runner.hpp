#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qhyper/identities.hpp"

namespace qhyper {

enum class Command { kVerify, kCertify, kSeries, kAll };
enum class ReportFormat { kText, kJson };

Command parse_command(std::string_view name);
std::string to_string(Command command);

struct RunConfig {
  Command command = Command::kAll;
  /// Identity, proof or series ids; empty or {"all"} selects everything.
  std::vector<std::string> ids;
  /// Unset: QVERIFY_TRIALS, else 20 (verify, certify) and 5 (series).
  std::optional<long> trials;
  /// Unset: QVERIFY_SEED, else 42.
  std::optional<std::uint64_t> seed;
  std::optional<long> n_max;
  std::optional<long> m_max;
  std::optional<long> r_max;
  long order = 60;
  long height = kDefaultHeight;
  ReportFormat format = ReportFormat::kText;
  std::string out;  // empty: standard output
  RegistryOptions registry;
};

struct RunResult {
  int exit_code = 0;
  nlohmann::ordered_json report;
};

/// Runs the selected checks. Throws ConfigError for bad selectors or ranges
/// before any check starts. `progress` receives per-trial lines for the
/// long multi-sum items (may be null).
RunResult run(const RunConfig& config, std::ostream* progress = nullptr);

/// The report rendered in the configured format.
std::string render(const RunResult& result, ReportFormat format);

/// Copy of a report with every elapsed_ms field removed.
nlohmann::ordered_json without_timings(nlohmann::ordered_json report);

/// Reads QVERIFY_SEED / QVERIFY_TRIALS into unset fields; ConfigError on
/// malformed values.
void apply_environment(RunConfig& config);

}  // namespace qhyper
