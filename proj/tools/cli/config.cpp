#include "cli/config.hpp"

#include <charconv>
#include <fstream>
#include <string>
#include <string_view>
#include <thread>

namespace collatz_cover::cli {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
  T out{};
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw UsageError("config: " + std::string(key) + " expects a non-negative integer, got '" +
                     std::string(value) + "'");
  }
  return out;
}

}  // namespace

unsigned default_thread_count() { return std::max(1U, std::thread::hardware_concurrency()); }

void Config::validate() const {
  if (max_exponent < 1) throw UsageError("max-m must be >= 1");
  if (sigma_budget < 1) throw UsageError("budget must be >= 1");
  if (threads < 1) throw UsageError("threads must be >= 1");
}

void apply_config_file(std::istream& in, Config& config) {
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw UsageError("config line " + std::to_string(line_no) + ": expected key=value");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key == "max_m") {
      config.max_exponent = parse_number<unsigned>(key, value);
    } else if (key == "budget") {
      config.sigma_budget = parse_number<std::uint64_t>(key, value);
    } else if (key == "cache") {
      if (value.empty()) {
        config.cache_path.reset();
      } else {
        config.cache_path = std::filesystem::path(std::string(value));
      }
    } else if (key == "format") {
      try {
        config.output_format = parse_format(value);
      } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("config: ") + e.what());
      }
    } else if (key == "threads") {
      config.threads = parse_number<unsigned>(key, value);
    } else {
      throw UsageError("config line " + std::to_string(line_no) + ": unknown key '" +
                       std::string(key) + "'");
    }
  }
}

void apply_config_file(const std::filesystem::path& path, Config& config) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path.string());
  apply_config_file(in, config);
}

}  // namespace collatz_cover::cli
