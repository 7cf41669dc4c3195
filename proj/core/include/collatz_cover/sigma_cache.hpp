#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

namespace collatz_cover {

inline constexpr std::uint64_t kDefaultCacheKeyBound = std::uint64_t{1} << 32;

/// Raised by SigmaCache::load/read on any malformed input.
class CacheFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thread-safe memo of total stopping times keyed by odd integer.
///
/// Only odd keys strictly below key_bound() are admitted; inserts of other
/// keys are dropped. Concurrent inserts for the same key always carry the
/// same value, so last-write-wins is harmless.
///
/// On-disk layout (little-endian):
///   "CSIG" | version u8 | count u64 | count x (key u64, value u64) | crc32 u32
/// Keys are strictly increasing and the CRC-32 covers every preceding byte.
class SigmaCache {
 public:
  static constexpr std::uint8_t kFormatVersion = 1;

  explicit SigmaCache(std::uint64_t key_bound = kDefaultCacheKeyBound);

  SigmaCache(SigmaCache&&) noexcept = default;
  SigmaCache& operator=(SigmaCache&&) noexcept = default;

  std::uint64_t key_bound() const noexcept { return key_bound_; }
  bool admits(std::uint64_t key) const noexcept {
    return (key & 1U) == 1U && key < key_bound_;
  }

  std::optional<std::uint64_t> find(std::uint64_t key) const;
  void insert(std::uint64_t key, std::uint64_t sigma);

  std::size_t size() const;
  void clear();

  /// All entries sorted by key.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> snapshot() const;

  void write(std::ostream& out) const;
  void save(const std::filesystem::path& path) const;

  /// Merges a serialized cache into this one.
  void read(std::istream& in);
  void load(const std::filesystem::path& path);

 private:
  static constexpr std::size_t kShardCount = 64;

  struct Shard {
    mutable std::shared_mutex mutex;
    std::unordered_map<std::uint64_t, std::uint64_t> entries;
  };

  Shard& shard_for(std::uint64_t key) const noexcept {
    return (*shards_)[(key >> 1) % kShardCount];
  }

  std::uint64_t key_bound_;
  std::unique_ptr<std::array<Shard, kShardCount>> shards_;
};

}  // namespace collatz_cover
