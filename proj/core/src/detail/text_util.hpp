#pragma once

#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "collatz_cover/big_int.hpp"

namespace collatz_cover::detail {

using Json = nlohmann::ordered_json;

// Values that fit 64 bits become JSON numbers, larger ones decimal strings.
inline Json big_to_json(const BigInt& value) {
  if (auto small = to_u64(value)) return Json(*small);
  return Json(to_decimal(value));
}

// Code points, not bytes, so "σ∞" counts as two columns.
inline std::size_t display_width(std::string_view utf8) {
  std::size_t width = 0;
  for (char c : utf8) {
    if ((static_cast<unsigned char>(c) & 0xC0U) != 0x80U) ++width;
  }
  return width;
}

// Left-aligned columns separated by two spaces, trailing blanks trimmed.
inline void write_aligned(std::ostream& out, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> widths;
  for (const auto& row : rows) {
    if (widths.size() < row.size()) widths.resize(row.size(), 0);
    for (std::size_t c = 0; c < row.size(); ++c) {
      widths[c] = std::max(widths[c], display_width(row[c]));
    }
  }
  std::string line;
  for (const auto& row : rows) {
    line.clear();
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) line += "  ";
      line += row[c];
      if (c + 1 < row.size()) line.append(widths[c] - display_width(row[c]), ' ');
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out << line << '\n';
  }
}

inline void check_sink(const std::ostream& out, std::string_view what) {
  if (!out) throw std::runtime_error("failed to write " + std::string(what));
}

}  // namespace collatz_cover::detail
