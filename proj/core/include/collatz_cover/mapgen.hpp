#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "collatz_cover/big_int.hpp"
#include "collatz_cover/covering.hpp"

namespace collatz_cover {

enum class Section { kOdd, kEven, kNext };

std::string_view to_string(Section section);

/// One (class, exponent) row of the generalized map: the odd progression,
/// its image under 3d+1, and the odd progression reached after dividing
/// out 2^m.
struct SchemaRow {
  unsigned class_index = 0;
  unsigned m = 0;
  LinearForm odd_form;
  LinearForm even_form;
  LinearForm next_form;
  bool starred = false;  // first row of each column

  const LinearForm& form(Section section) const;
};

struct SchemaColumn {
  unsigned class_index = 0;
  unsigned residue = 0;
  std::vector<SchemaRow> rows;  // m = 1..max_exponent
};

struct SchemaTable {
  unsigned max_exponent = 0;
  std::vector<SchemaColumn> columns;  // classes 1..9

  const SchemaRow& at(unsigned class_index, unsigned m) const;
};

SchemaTable build_schema(unsigned max_exponent);
SchemaTable build_schema(const ProfileTable& profiles);

/// Stopping-time counterpart of SchemaRow. Each section renders as
/// sigma(54n + base_offset) + increment.
struct SigmaSchemaRow {
  unsigned class_index = 0;
  unsigned m = 0;
  unsigned base_offset = 0;
  bool starred = false;

  unsigned odd_increment() const noexcept { return m + 1; }
  unsigned even_increment() const noexcept { return m; }
  static constexpr unsigned next_increment() noexcept { return 0; }
  unsigned increment(Section section) const noexcept;

  /// e.g. "σ∞(54n+29)+2"; the increment is omitted when zero.
  std::string form(Section section) const;
};

struct SigmaSchemaColumn {
  unsigned class_index = 0;
  unsigned residue = 0;
  std::vector<SigmaSchemaRow> rows;
};

struct SigmaSchemaTable {
  unsigned max_exponent = 0;
  std::vector<SigmaSchemaColumn> columns;

  const SigmaSchemaRow& at(unsigned class_index, unsigned m) const;
};

SigmaSchemaTable build_sigma_schema(unsigned max_exponent);
SigmaSchemaTable build_sigma_schema(const ProfileTable& profiles);

enum class Format { kText, kCsv, kJson };

std::string_view to_string(Format format);
/// Accepts "text", "csv" and "json". Throws std::invalid_argument.
Format parse_format(std::string_view name);

/// Deterministic rendering. Text lays out one column per class with the
/// three sections stacked; CSV has one line per (i, m, section); JSON nests
/// rows under their class. Throws std::runtime_error if the sink fails.
void render(const SchemaTable& table, Format format, std::ostream& sink);
void render(const SigmaSchemaTable& table, Format format, std::ostream& sink);

}  // namespace collatz_cover
