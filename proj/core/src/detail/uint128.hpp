#pragma once

#include <bit>
#include <cstdint>

namespace collatz_cover::detail {

__extension__ typedef unsigned __int128 u128;

inline unsigned countr_zero128(u128 x) {
  const auto low = static_cast<std::uint64_t>(x);
  if (low != 0) return static_cast<unsigned>(std::countr_zero(low));
  return 64U + static_cast<unsigned>(std::countr_zero(static_cast<std::uint64_t>(x >> 64)));
}

}  // namespace collatz_cover::detail
