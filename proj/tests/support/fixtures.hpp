#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace collatz_cover::testing {

#ifndef COLLATZ_COVER_FIXTURE_DIR
#error "COLLATZ_COVER_FIXTURE_DIR must point at tests/fixtures"
#endif

inline std::string fixture_path(const std::string& name) {
  return std::string(COLLATZ_COVER_FIXTURE_DIR) + "/" + name;
}

/// Rows of a comma-separated file with the header line dropped.
inline std::vector<std::vector<std::string>> read_csv(const std::string& name) {
  std::ifstream in(fixture_path(name));
  if (!in) throw std::runtime_error("missing fixture " + name);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    rows.push_back(std::move(cells));
  }
  return rows;
}

/// One printed row of the V_{r,m}(n) / d_{i,m} tables.
struct ReferenceProfileRow {
  unsigned class_index;
  char table;  // 'V' or 'd'
  unsigned m;
  std::string modulus;
  std::string offset;
  std::vector<std::string> first_members;
};

inline std::vector<ReferenceProfileRow> reference_profiles() {
  std::vector<ReferenceProfileRow> out;
  for (const auto& cells : read_csv("reference_profiles.csv")) {
    ReferenceProfileRow row{static_cast<unsigned>(std::stoul(cells.at(0))), cells.at(1).at(0),
                            static_cast<unsigned>(std::stoul(cells.at(2))), cells.at(3),
                            cells.at(4), {}};
    std::stringstream ss(cells.at(5));
    std::string member;
    while (std::getline(ss, member, ';')) row.first_members.push_back(member);
    out.push_back(std::move(row));
  }
  return out;
}

/// One cell of the printed generalized map.
struct ReferenceSchemaCell {
  unsigned class_index;
  unsigned m;
  std::string section;
  std::string modulus;
  std::string offset;
  bool starred;
};

inline std::vector<ReferenceSchemaCell> reference_schema() {
  std::vector<ReferenceSchemaCell> out;
  for (const auto& c : read_csv("reference_schema.csv")) {
    out.push_back({static_cast<unsigned>(std::stoul(c.at(0))),
                   static_cast<unsigned>(std::stoul(c.at(1))), c.at(2), c.at(3), c.at(4),
                   c.at(5) == "1"});
  }
  return out;
}

/// One cell of the printed stopping-time map.
struct ReferenceSigmaCell {
  unsigned class_index;
  unsigned m;
  std::string section;
  unsigned base_modulus;
  unsigned base_offset;
  unsigned increment;
};

inline std::vector<ReferenceSigmaCell> reference_sigma_schema() {
  std::vector<ReferenceSigmaCell> out;
  for (const auto& c : read_csv("reference_sigma_schema.csv")) {
    out.push_back({static_cast<unsigned>(std::stoul(c.at(0))),
                   static_cast<unsigned>(std::stoul(c.at(1))), c.at(2),
                   static_cast<unsigned>(std::stoul(c.at(3))),
                   static_cast<unsigned>(std::stoul(c.at(4))),
                   static_cast<unsigned>(std::stoul(c.at(5)))});
  }
  return out;
}

}  // namespace collatz_cover::testing
