#include "collatz_cover/sigma_cache.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <istream>
#include <iterator>
#include <mutex>
#include <ostream>
#include <string>

#include <zlib.h>

namespace collatz_cover {
namespace {

constexpr char kMagic[4] = {'C', 'S', 'I', 'G'};
constexpr std::size_t kHeaderSize = sizeof(kMagic) + 1 + 8;
constexpr std::size_t kEntrySize = 16;
constexpr std::size_t kTrailerSize = 4;

void put_le(std::string& buf, std::uint64_t value, int bytes) {
  for (int i = 0; i < bytes; ++i) buf.push_back(static_cast<char>((value >> (8 * i)) & 0xFFU));
}

std::uint64_t get_le(const unsigned char* p, int bytes) {
  std::uint64_t value = 0;
  for (int i = 0; i < bytes; ++i) value |= static_cast<std::uint64_t>(p[i]) << (8 * i);
  return value;
}

std::uint32_t crc32_of(const void* data, std::size_t size) {
  uLong crc = crc32(0L, Z_NULL, 0);
  const auto* bytes = static_cast<const Bytef*>(data);
  // zlib takes uInt lengths.
  while (size > 0) {
    const auto chunk = static_cast<uInt>(std::min<std::size_t>(size, 1U << 30));
    crc = crc32(crc, bytes, chunk);
    bytes += chunk;
    size -= chunk;
  }
  return static_cast<std::uint32_t>(crc);
}

}  // namespace

SigmaCache::SigmaCache(std::uint64_t key_bound)
    : key_bound_(key_bound), shards_(std::make_unique<std::array<Shard, kShardCount>>()) {}

std::optional<std::uint64_t> SigmaCache::find(std::uint64_t key) const {
  if (!admits(key)) return std::nullopt;
  const Shard& shard = shard_for(key);
  std::shared_lock lock(shard.mutex);
  auto it = shard.entries.find(key);
  if (it == shard.entries.end()) return std::nullopt;
  return it->second;
}

void SigmaCache::insert(std::uint64_t key, std::uint64_t sigma) {
  if (!admits(key)) return;
  Shard& shard = shard_for(key);
  std::unique_lock lock(shard.mutex);
  shard.entries.insert_or_assign(key, sigma);
}

std::size_t SigmaCache::size() const {
  std::size_t total = 0;
  for (const Shard& shard : *shards_) {
    std::shared_lock lock(shard.mutex);
    total += shard.entries.size();
  }
  return total;
}

void SigmaCache::clear() {
  for (Shard& shard : *shards_) {
    std::unique_lock lock(shard.mutex);
    shard.entries.clear();
  }
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> SigmaCache::snapshot() const {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  for (const Shard& shard : *shards_) {
    std::shared_lock lock(shard.mutex);
    out.insert(out.end(), shard.entries.begin(), shard.entries.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

void SigmaCache::write(std::ostream& out) const {
  const auto entries = snapshot();
  std::string buf;
  buf.reserve(kHeaderSize + entries.size() * kEntrySize + kTrailerSize);
  buf.append(kMagic, sizeof(kMagic));
  buf.push_back(static_cast<char>(kFormatVersion));
  put_le(buf, entries.size(), 8);
  for (const auto& [key, value] : entries) {
    put_le(buf, key, 8);
    put_le(buf, value, 8);
  }
  put_le(buf, crc32_of(buf.data(), buf.size()), 4);
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) throw std::runtime_error("failed to write sigma cache");
}

void SigmaCache::save(const std::filesystem::path& path) const {
  // Write to a sibling file first so an interrupted save never leaves a
  // truncated cache behind.
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    write(out);
    out.flush();
    if (!out) throw std::runtime_error("failed to write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

void SigmaCache::read(std::istream& in) {
  const std::string buf{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  const auto* bytes = reinterpret_cast<const unsigned char*>(buf.data());

  if (buf.size() < kHeaderSize + kTrailerSize) throw CacheFormatError("sigma cache truncated");
  if (std::memcmp(bytes, kMagic, sizeof(kMagic)) != 0) {
    throw CacheFormatError("sigma cache: bad magic");
  }
  if (bytes[4] != kFormatVersion) {
    throw CacheFormatError("sigma cache: unsupported version " + std::to_string(bytes[4]));
  }
  const std::uint64_t count = get_le(bytes + 5, 8);
  const std::size_t body = buf.size() - kHeaderSize - kTrailerSize;
  if (body % kEntrySize != 0 || body / kEntrySize != count) {
    throw CacheFormatError("sigma cache: entry count " + std::to_string(count) +
                           " does not match file size");
  }
  const std::size_t crc_at = buf.size() - kTrailerSize;
  if (crc32_of(bytes, crc_at) != static_cast<std::uint32_t>(get_le(bytes + crc_at, 4))) {
    throw CacheFormatError("sigma cache: checksum mismatch");
  }

  std::vector<std::pair<std::uint64_t, std::uint64_t>> entries;
  entries.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    const unsigned char* p = bytes + kHeaderSize + i * kEntrySize;
    const std::uint64_t key = get_le(p, 8);
    if ((key & 1U) == 0) throw CacheFormatError("sigma cache: even key " + std::to_string(key));
    if (!entries.empty() && key <= entries.back().first) {
      throw CacheFormatError("sigma cache: keys not strictly increasing");
    }
    entries.emplace_back(key, get_le(p + 8, 8));
  }
  for (const auto& [key, value] : entries) insert(key, value);
}

void SigmaCache::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open sigma cache " + path.string());
  read(in);
}

}  // namespace collatz_cover
