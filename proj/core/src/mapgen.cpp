#include "collatz_cover/mapgen.hpp"

#include <ostream>
#include <stdexcept>
#include <string>

#include "detail/text_util.hpp"

namespace collatz_cover {
namespace {

constexpr Section kSections[] = {Section::kOdd, Section::kEven, Section::kNext};

std::string section_label(Section section, unsigned class_index) {
  const std::string i = std::to_string(class_index);
  switch (section) {
    case Section::kOdd:
      return "Odd d_" + i;
    case Section::kEven:
      return "Even_" + i;
    case Section::kNext:
      return "Next d_" + i;
  }
  return {};
}

// Lays out one column per class with the three sections stacked, the way
// the printed map reads top to bottom.
template <typename Column, typename CellFn>
void render_columns(std::ostream& out, const std::vector<Column>& columns, unsigned max_exponent,
                    CellFn cell) {
  const std::size_t height = 3 * (static_cast<std::size_t>(max_exponent) + 1);
  std::vector<std::vector<std::string>> grid(height);
  for (const Column& column : columns) {
    std::size_t line = 0;
    for (Section section : kSections) {
      grid[line++].push_back(section_label(section, column.class_index));
      for (const auto& row : column.rows) grid[line++].push_back(cell(row, section));
    }
  }
  detail::write_aligned(out, grid);
}

}  // namespace

std::string_view to_string(Section section) {
  switch (section) {
    case Section::kOdd:
      return "odd";
    case Section::kEven:
      return "even";
    case Section::kNext:
      return "next";
  }
  return "unknown";
}

const LinearForm& SchemaRow::form(Section section) const {
  switch (section) {
    case Section::kOdd:
      return odd_form;
    case Section::kEven:
      return even_form;
    case Section::kNext:
      break;
  }
  return next_form;
}

const SchemaRow& SchemaTable::at(unsigned class_index, unsigned m) const {
  if (class_index < 1 || class_index > columns.size() || m < 1 || m > max_exponent) {
    throw std::out_of_range("schema cell (" + std::to_string(class_index) + ", " +
                            std::to_string(m) + ") out of range");
  }
  return columns[class_index - 1].rows[m - 1];
}

SchemaTable build_schema(const ProfileTable& profiles) {
  SchemaTable table;
  table.max_exponent = profiles.max_exponent();
  for (unsigned i = 1; i <= kClassCount; ++i) {
    SchemaColumn column{i, residue_of_class(i), {}};
    for (const Profile& p : profiles.column(i)) {
      column.rows.push_back(SchemaRow{i, p.m, LinearForm{p.d_modulus, p.d_offset},
                                      LinearForm{p.even_modulus, p.even_offset},
                                      LinearForm{BigInt(kNextModulus), BigInt(p.next_offset)},
                                      p.m == 1});
    }
    table.columns.push_back(std::move(column));
  }
  return table;
}

SchemaTable build_schema(unsigned max_exponent) { return build_schema(ProfileTable(max_exponent)); }

unsigned SigmaSchemaRow::increment(Section section) const noexcept {
  switch (section) {
    case Section::kOdd:
      return odd_increment();
    case Section::kEven:
      return even_increment();
    case Section::kNext:
      break;
  }
  return next_increment();
}

std::string SigmaSchemaRow::form(Section section) const {
  std::string out = "σ∞(" + std::to_string(kNextModulus) + "n+" + std::to_string(base_offset) + ")";
  if (const unsigned inc = increment(section); inc != 0) out += "+" + std::to_string(inc);
  return out;
}

const SigmaSchemaRow& SigmaSchemaTable::at(unsigned class_index, unsigned m) const {
  if (class_index < 1 || class_index > columns.size() || m < 1 || m > max_exponent) {
    throw std::out_of_range("sigma schema cell (" + std::to_string(class_index) + ", " +
                            std::to_string(m) + ") out of range");
  }
  return columns[class_index - 1].rows[m - 1];
}

SigmaSchemaTable build_sigma_schema(const ProfileTable& profiles) {
  SigmaSchemaTable table;
  table.max_exponent = profiles.max_exponent();
  for (unsigned i = 1; i <= kClassCount; ++i) {
    SigmaSchemaColumn column{i, residue_of_class(i), {}};
    for (const Profile& p : profiles.column(i)) {
      column.rows.push_back(SigmaSchemaRow{i, p.m, p.next_offset, p.m == 1});
    }
    table.columns.push_back(std::move(column));
  }
  return table;
}

SigmaSchemaTable build_sigma_schema(unsigned max_exponent) {
  return build_sigma_schema(ProfileTable(max_exponent));
}

std::string_view to_string(Format format) {
  switch (format) {
    case Format::kText:
      return "text";
    case Format::kCsv:
      return "csv";
    case Format::kJson:
      return "json";
  }
  return "unknown";
}

Format parse_format(std::string_view name) {
  if (name == "text") return Format::kText;
  if (name == "csv") return Format::kCsv;
  if (name == "json") return Format::kJson;
  throw std::invalid_argument("unknown format '" + std::string(name) +
                              "' (expected text, csv or json)");
}

void render(const SchemaTable& table, Format format, std::ostream& sink) {
  switch (format) {
    case Format::kText:
      render_columns(sink, table.columns, table.max_exponent,
                     [](const SchemaRow& row, Section section) {
                       return row.form(section).str() + (row.starred ? "*" : "");
                     });
      break;
    case Format::kCsv:
      sink << "i,m,section,modulus,offset,starred\n";
      for (const SchemaColumn& column : table.columns) {
        for (const SchemaRow& row : column.rows) {
          for (Section section : kSections) {
            const LinearForm& f = row.form(section);
            sink << row.class_index << ',' << row.m << ',' << to_string(section) << ','
                 << to_decimal(f.modulus) << ',' << to_decimal(f.offset) << ','
                 << (row.starred ? 1 : 0) << '\n';
          }
        }
      }
      break;
    case Format::kJson: {
      detail::Json classes = detail::Json::array();
      for (const SchemaColumn& column : table.columns) {
        detail::Json rows = detail::Json::array();
        for (const SchemaRow& row : column.rows) {
          detail::Json entry = {{"m", row.m}, {"starred", row.starred}};
          for (Section section : kSections) {
            const LinearForm& f = row.form(section);
            entry[std::string(to_string(section))] = {{"modulus", detail::big_to_json(f.modulus)},
                                                      {"offset", detail::big_to_json(f.offset)}};
          }
          rows.push_back(std::move(entry));
        }
        classes.push_back({{"i", column.class_index}, {"r", column.residue}, {"rows", rows}});
      }
      detail::Json doc = {{"max_m", table.max_exponent}, {"classes", classes}};
      sink << doc.dump(2) << '\n';
      break;
    }
  }
  detail::check_sink(sink, "schema map");
}

void render(const SigmaSchemaTable& table, Format format, std::ostream& sink) {
  switch (format) {
    case Format::kText:
      render_columns(sink, table.columns, table.max_exponent,
                     [](const SigmaSchemaRow& row, Section section) { return row.form(section); });
      break;
    case Format::kCsv:
      sink << "i,m,section,base_modulus,base_offset,increment\n";
      for (const SigmaSchemaColumn& column : table.columns) {
        for (const SigmaSchemaRow& row : column.rows) {
          for (Section section : kSections) {
            sink << row.class_index << ',' << row.m << ',' << to_string(section) << ','
                 << kNextModulus << ',' << row.base_offset << ',' << row.increment(section)
                 << '\n';
          }
        }
      }
      break;
    case Format::kJson: {
      detail::Json classes = detail::Json::array();
      for (const SigmaSchemaColumn& column : table.columns) {
        detail::Json rows = detail::Json::array();
        for (const SigmaSchemaRow& row : column.rows) {
          detail::Json increments = detail::Json::object();
          detail::Json forms = detail::Json::object();
          for (Section section : kSections) {
            increments[std::string(to_string(section))] = row.increment(section);
            forms[std::string(to_string(section))] = row.form(section);
          }
          rows.push_back({{"m", row.m},
                          {"starred", row.starred},
                          {"base_modulus", kNextModulus},
                          {"base_offset", row.base_offset},
                          {"increments", increments},
                          {"forms", forms}});
        }
        classes.push_back({{"i", column.class_index}, {"r", column.residue}, {"rows", rows}});
      }
      detail::Json doc = {{"max_m", table.max_exponent}, {"classes", classes}};
      sink << doc.dump(2) << '\n';
      break;
    }
  }
  detail::check_sink(sink, "sigma map");
}

}  // namespace collatz_cover
