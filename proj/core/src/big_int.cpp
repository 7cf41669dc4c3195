#include "collatz_cover/big_int.hpp"

#include <algorithm>
#include <stdexcept>

namespace collatz_cover {

BigInt parse_decimal(std::string_view text) {
  if (text.empty()) {
    throw std::invalid_argument("expected a decimal integer, got an empty string");
  }
  if (!std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw std::invalid_argument("not a decimal integer: '" + std::string(text) + "'");
  }
  return BigInt(std::string(text), 10);
}

std::string to_decimal(const BigInt& value) { return value.get_str(10); }

BigInt from_u64(std::uint64_t value) {
  static_assert(sizeof(unsigned long) == sizeof(std::uint64_t),
                "mpz unsigned long conversions assume LP64");
  return BigInt(static_cast<unsigned long>(value));
}

std::optional<std::uint64_t> to_u64(const BigInt& value) {
  if (sgn(value) < 0 || !value.fits_ulong_p()) return std::nullopt;
  return static_cast<std::uint64_t>(value.get_ui());
}

BigInt pow2(unsigned exponent) {
  BigInt out;
  mpz_setbit(out.get_mpz_t(), exponent);
  return out;
}

unsigned trailing_zeros(const BigInt& value) {
  if (sgn(value) == 0) throw std::invalid_argument("trailing_zeros of zero");
  return static_cast<unsigned>(mpz_scan1(value.get_mpz_t(), 0));
}

}  // namespace collatz_cover
