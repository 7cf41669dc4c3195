#pragma once

#include <cstdint>
#include <optional>

#include "collatz_cover/arith.hpp"
#include "collatz_cover/covering.hpp"
#include "collatz_cover/report.hpp"

namespace collatz_cover {

class SigmaCache;

/// Checks, for every class and 1 <= m <= max_exponent, the polynomial
/// identity 3*(18*2^m*n + d_offset) + 1 = 2^m*(54n + a) coefficient by
/// coefficient, plus oddness of a and d_offset = residue (mod 18). No
/// sampling of n is involved.
VerifyReport verify_theorem1_symbolic(unsigned max_exponent = kDefaultMaxExponent);

/// For each odd d in [first, last]: with classify(d) = (profile, n), the next
/// odd number lies strictly between 54n and 54(n+1). Tallies per class.
/// Requires 1 <= first <= last and at least one odd number in range.
VerifyReport verify_conjecture1(std::uint64_t first, std::uint64_t last);

/// sigma(d) = sigma(next) + m + 1 for every odd 1 < d <= bound, plus the
/// worked pair sigma(13) = 9, sigma(5) = 5. Budget overruns are deferred.
VerifyReport verify_sigma_relation(std::uint64_t bound, SigmaCache* cache = nullptr,
                                   std::uint64_t budget = kDefaultSigmaBudget);

/// For every class, checks the 4d+1 successor on samples_per_class members
/// r, r+18, r+36, ... and walks the chain 19, 77, 309, ... through one full
/// turn of the residue order.
VerifyReport verify_cyclic(unsigned samples_per_class = 100);

inline constexpr std::uint64_t kDefaultPartitionSize = std::uint64_t{1} << 16;

struct RangeOptions {
  std::uint64_t first = 1;
  std::uint64_t last = 1;
  /// Restrict to one residue class (1..9).
  std::optional<unsigned> class_filter;
  unsigned threads = 1;
  /// Odd integers per partition.
  std::uint64_t partition_size = kDefaultPartitionSize;
  unsigned max_exponent = kDefaultMaxExponent;
  std::uint64_t budget = kDefaultSigmaBudget;
  SigmaCache* cache = nullptr;
};

/// Classifies every odd integer in range and checks reconstruction, the
/// 54n bound and the stopping-time recurrence. Partitions run on a worker
/// pool and merge in partition order, so the report does not depend on
/// the thread count.
VerifyReport verify_range(const RangeOptions& options);

}  // namespace collatz_cover
