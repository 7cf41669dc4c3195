#include "collatz_cover/report.hpp"

#include <algorithm>
#include <ostream>

#include "detail/text_util.hpp"

namespace collatz_cover {

std::string_view to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::kPass:
      return "pass";
    case Outcome::kFail:
      return "fail";
    case Outcome::kDeferred:
      return "deferred";
  }
  return "unknown";
}

void VerifyReport::add_param(std::string key, std::string value) {
  params.emplace_back(std::move(key), std::move(value));
}

void VerifyReport::add_counterexample(Counterexample c) {
  bump("counterexamples");
  if (counterexamples.size() < kMaxListedItems) counterexamples.push_back(std::move(c));
  outcome = Outcome::kFail;
}

void VerifyReport::add_deferred(std::string input) {
  bump("deferred");
  if (deferred.size() < kMaxListedItems) deferred.push_back(std::move(input));
  if (outcome == Outcome::kPass) outcome = Outcome::kDeferred;
}

void VerifyReport::bump(std::string_view name, std::uint64_t by) {
  auto it = std::find_if(tallies.begin(), tallies.end(),
                         [&](const auto& entry) { return entry.first == name; });
  if (it == tallies.end()) {
    tallies.emplace_back(std::string(name), by);
  } else {
    it->second += by;
  }
}

std::uint64_t VerifyReport::tally(std::string_view name) const {
  auto it = std::find_if(tallies.begin(), tallies.end(),
                         [&](const auto& entry) { return entry.first == name; });
  return it == tallies.end() ? 0 : it->second;
}

void VerifyReport::settle() {
  if (!counterexamples.empty()) {
    outcome = Outcome::kFail;
  } else if (!deferred.empty()) {
    outcome = Outcome::kDeferred;
  } else {
    outcome = Outcome::kPass;
  }
}

std::string to_json(const VerifyReport& report, bool include_timing) {
  detail::Json params = detail::Json::object();
  for (const auto& [key, value] : report.params) params[key] = value;

  detail::Json counterexamples = detail::Json::array();
  for (const Counterexample& c : report.counterexamples) {
    counterexamples.push_back({{"input", c.input}, {"expected", c.expected}, {"actual", c.actual}});
  }

  detail::Json tallies = detail::Json::object();
  for (const auto& [key, value] : report.tallies) tallies[key] = value;

  detail::Json doc = {{"check_name", report.check_name},
                      {"params", params},
                      {"outcome", std::string(to_string(report.outcome))},
                      {"counterexamples", counterexamples},
                      {"deferred", report.deferred},
                      {"tallies", tallies},
                      {"items_checked", report.items_checked}};
  if (include_timing) doc["elapsed_ms"] = report.elapsed.count();
  return doc.dump(2);
}

void write_summary(std::ostream& out, const VerifyReport& report) {
  out << "check: " << report.check_name << '\n';
  for (const auto& [key, value] : report.params) out << "  " << key << " = " << value << '\n';
  out << "outcome: " << to_string(report.outcome) << '\n';
  out << "items checked: " << report.items_checked << '\n';
  for (const auto& [key, value] : report.tallies) out << "  " << key << ": " << value << '\n';
  for (const Counterexample& c : report.counterexamples) {
    out << "counterexample: " << c.input << " expected " << c.expected << ", got " << c.actual
        << '\n';
  }
  if (!report.deferred.empty()) {
    out << "deferred:";
    for (const std::string& item : report.deferred) out << ' ' << item;
    out << '\n';
  }
  detail::check_sink(out, "report summary");
}

void write_csv(std::ostream& out, const VerifyReport& report) {
  out << "key,value\n";
  out << "check_name," << report.check_name << '\n';
  for (const auto& [key, value] : report.params) out << "param." << key << ',' << value << '\n';
  out << "outcome," << to_string(report.outcome) << '\n';
  out << "items_checked," << report.items_checked << '\n';
  for (const auto& [key, value] : report.tallies) out << "tally." << key << ',' << value << '\n';
  detail::check_sink(out, "report CSV");
}

}  // namespace collatz_cover
