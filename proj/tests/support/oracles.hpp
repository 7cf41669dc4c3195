#pragma once

// Brute-force reference implementations. They share no code with the
// library and favour obviousness over speed.

#include <cstdint>
#include <string>

namespace collatz_cover::testing {

__extension__ typedef unsigned __int128 Wide;

/// Iterates n -> 3n+1 / n/2 one unit step at a time until n == 1.
inline std::uint64_t brute_sigma(std::uint64_t start) {
  Wide n = start;
  std::uint64_t steps = 0;
  while (n != 1) {
    n = (n % 2 == 1) ? 3 * n + 1 : n / 2;
    ++steps;
  }
  return steps;
}

struct BruteValuation {
  unsigned m;
  std::uint64_t odd_part;
};

/// Divides by two until odd. x must be even and nonzero.
inline BruteValuation brute_valuation(Wide x) {
  unsigned m = 0;
  while (x % 2 == 0) {
    x /= 2;
    ++m;
  }
  return {m, static_cast<std::uint64_t>(x)};
}

/// (m, next odd) of 3d+1 by repeated halving.
inline BruteValuation brute_odd_step(std::uint64_t d) { return brute_valuation(Wide{d} * 3 + 1); }

/// Repeated decimal digit sums until a single digit remains.
inline unsigned brute_digit_root(std::uint64_t value) {
  while (value >= 10) {
    std::uint64_t sum = 0;
    for (char c : std::to_string(value)) sum += static_cast<unsigned>(c - '0');
    value = sum;
  }
  return static_cast<unsigned>(value);
}

}  // namespace collatz_cover::testing
