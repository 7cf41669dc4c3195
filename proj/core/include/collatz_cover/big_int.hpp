#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace collatz_cover {

/// Arbitrary-precision integer used for every value that may outgrow 64 bits.
using BigInt = mpz_class;

/// Parses a non-empty string of ASCII decimal digits. Signs, whitespace and
/// radix prefixes are rejected with std::invalid_argument.
BigInt parse_decimal(std::string_view text);

std::string to_decimal(const BigInt& value);

BigInt from_u64(std::uint64_t value);

/// Returns nullopt when value is negative or needs more than 64 bits.
std::optional<std::uint64_t> to_u64(const BigInt& value);

BigInt pow2(unsigned exponent);

/// Number of trailing zero bits. value must be nonzero.
unsigned trailing_zeros(const BigInt& value);

}  // namespace collatz_cover
