#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <stdexcept>

#include "collatz_cover/arith.hpp"
#include "collatz_cover/covering.hpp"
#include "collatz_cover/mapgen.hpp"

namespace collatz_cover::cli {

/// Bad flags, bad values or a bad config file. Maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

unsigned default_thread_count();

struct Config {
  unsigned max_exponent = kDefaultMaxExponent;
  std::uint64_t sigma_budget = kDefaultSigmaBudget;
  std::optional<std::filesystem::path> cache_path;
  Format output_format = Format::kText;
  unsigned threads = default_thread_count();

  /// Throws UsageError unless max_exponent, sigma_budget and threads are >= 1.
  void validate() const;
};

/// Applies a key=value config file on top of config. Blank lines and lines
/// starting with '#' are ignored. Keys: max_m, budget, cache, format, threads.
void apply_config_file(std::istream& in, Config& config);
void apply_config_file(const std::filesystem::path& path, Config& config);

/// Name of the environment variable holding a config file path.
inline constexpr const char* kConfigEnvVar = "COLLATZ_COVER_CONFIG";

}  // namespace collatz_cover::cli
