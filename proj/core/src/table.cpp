#include "kalmar/table.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "kalmar/errors.hpp"

namespace kalmar {

std::string to_csv(const Table& table) {
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  line(table.header);
  for (const auto& r : table.rows) line(r);
  return out;
}

Table parse_csv(std::string_view text) {
  Table t;
  bool have_header = false;
  while (!text.empty()) {
    auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    std::vector<std::string> cells(1);
    int depth = 0;
    for (char ch : line) {
      if (ch == '[') ++depth;
      if (ch == ']') --depth;
      if (depth < 0) throw PreconditionError("parse_csv: unbalanced ']'");
      if (ch == ',' && depth == 0)
        cells.emplace_back();
      else
        cells.back().push_back(ch);
    }
    if (depth != 0) throw PreconditionError("parse_csv: unbalanced '['");
    if (!have_header) {
      t.header = std::move(cells);
      have_header = true;
    } else {
      t.rows.push_back(std::move(cells));
    }
  }
  return t;
}

std::string to_text(const Table& table) {
  std::vector<std::size_t> width(table.header.size(), 0);
  auto measure = [&](const std::vector<std::string>& r) {
    if (r.size() > width.size()) width.resize(r.size(), 0);
    for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
  };
  measure(table.header);
  for (const auto& r : table.rows) measure(r);
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      os << r[i];
      if (i + 1 < r.size()) os << std::string(width[i] - r[i].size() + 2, ' ');
    }
    os << '\n';
  };
  line(table.header);
  for (const auto& r : table.rows) line(r);
  return os.str();
}

std::string format_real(Real value, int digits) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.*Lg", digits, value);
  return buf;
}

}  // namespace kalmar
