#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "collatz_cover/big_int.hpp"

namespace collatz_cover {

class SigmaCache;

/// A positive odd integer of arbitrary size.
class OddInt {
 public:
  explicit OddInt(std::uint64_t value);
  explicit OddInt(BigInt value);

  /// Decimal string of arbitrary length.
  static OddInt parse(std::string_view text);

  const BigInt& value() const noexcept { return value_; }
  std::string str() const { return to_decimal(value_); }

  friend bool operator==(const OddInt& a, const OddInt& b) {
    return a.value_ == b.value_;
  }
  friend bool operator<(const OddInt& a, const OddInt& b) {
    return a.value_ < b.value_;
  }

 private:
  BigInt value_;
};

struct Valuation {
  unsigned m;
  OddInt odd_part;
};

/// Splits an even x >= 2 into odd_part * 2^m with m maximal.
/// Throws std::invalid_argument for odd or non-positive x.
Valuation two_adic_valuation(const BigInt& x);

/// One shortcut step d -> (3d+1)/2^m between consecutive odd numbers.
struct OddStep {
  OddInt source;
  unsigned m;
  OddInt target;

  friend bool operator==(const OddStep&, const OddStep&) = default;
};

OddStep odd_step(const OddInt& d);

OddInt four_d_plus_one(const OddInt& d);

/// Odd-to-odd trajectory down to 1. Empty when start is 1.
struct CollatzTrace {
  OddInt start;
  std::vector<OddStep> steps;
  std::uint64_t sigma;
};

inline constexpr std::uint64_t kDefaultSigmaBudget = 10'000'000;

/// Thrown when a total stopping time exceeds the configured step budget.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const BigInt& input, std::uint64_t budget);

  const BigInt& input() const noexcept { return input_; }
  std::uint64_t budget() const noexcept { return budget_; }

 private:
  BigInt input_;
  std::uint64_t budget_;
};

/// Total stopping time: the number of unit steps (3n+1 on odd, n/2 on
/// even) from d to the first arrival at 1, so sigma(1) = 0 and
/// sigma(13) = 9.
///
/// When cache is non-null, admitted odd values met along the orbit are
/// read from and written to it. A result above budget throws
/// BudgetExceeded whether or not a cache is used, so warm, cold and
/// absent caches always agree. Throws std::invalid_argument for d < 1.
std::uint64_t sigma_infinity(const BigInt& d, SigmaCache* cache = nullptr,
                             std::uint64_t budget = kDefaultSigmaBudget);

CollatzTrace trace(const OddInt& d, SigmaCache* cache = nullptr,
                   std::uint64_t budget = kDefaultSigmaBudget);

}  // namespace collatz_cover
