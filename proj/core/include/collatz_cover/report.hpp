#pragma once

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace collatz_cover {

enum class Outcome { kPass, kFail, kDeferred };

std::string_view to_string(Outcome outcome);

struct Counterexample {
  std::string input;
  std::string expected;
  std::string actual;

  friend bool operator==(const Counterexample&, const Counterexample&) = default;
};

/// Machine-readable result of one audit.
///
/// outcome is kFail exactly when counterexamples is nonempty; otherwise it is
/// kDeferred when some items could not be decided (deferred is nonempty) and
/// kPass when everything was decided.
struct VerifyReport {
  std::string check_name;
  std::vector<std::pair<std::string, std::string>> params;
  Outcome outcome = Outcome::kPass;
  std::vector<Counterexample> counterexamples;
  std::vector<std::string> deferred;
  /// Named counters such as per-class totals. Order is part of the output.
  std::vector<std::pair<std::string, std::uint64_t>> tallies;
  std::uint64_t items_checked = 0;
  std::chrono::milliseconds elapsed{0};

  void add_param(std::string key, std::string value);
  void add_counterexample(Counterexample c);
  void add_deferred(std::string input);
  void bump(std::string_view tally, std::uint64_t by = 1);
  std::uint64_t tally(std::string_view name) const;

  /// Recomputes outcome from counterexamples and deferred.
  void settle();
};

/// Stored counterexamples and deferred inputs are capped at this many;
/// the full counts are kept in the "counterexamples" and "deferred" tallies.
inline constexpr std::size_t kMaxListedItems = 1000;

/// JSON with fields check_name, params, outcome, counterexamples[],
/// deferred[], tallies, items_checked and, when include_timing is set,
/// elapsed_ms. Output without timing is byte-identical for equal reports.
std::string to_json(const VerifyReport& report, bool include_timing = false);

/// Short human-readable summary, one fact per line.
void write_summary(std::ostream& out, const VerifyReport& report);

/// Two-column key,value CSV of the summary fields and tallies.
void write_csv(std::ostream& out, const VerifyReport& report);

}  // namespace collatz_cover
