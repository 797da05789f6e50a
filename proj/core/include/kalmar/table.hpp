#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "kalmar/types.hpp"

namespace kalmar {

/// A header plus rows of preformatted cells.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row) { rows.push_back(std::move(row)); }
  friend bool operator==(const Table&, const Table&) = default;
};

/// Comma-separated, header first, '\n' line ends, no quoting. Cells may
/// contain bracketed lists such as "[8,3,1]"; commas inside brackets do not
/// split cells.
std::string to_csv(const Table& table);
Table parse_csv(std::string_view text);

/// Left-aligned columns padded with spaces.
std::string to_text(const Table& table);

/// Real to `digits` significant digits (%.*Lg).
std::string format_real(Real value, int digits = 12);

}  // namespace kalmar
