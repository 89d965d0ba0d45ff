#include "varpart/format.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace varpart {

namespace {

// Exact ties at the third decimal (x.xx5 exactly representable in binary)
// are the only inputs where printf's rounding differs from half-away.
bool is_exact_tie(double v) {
  char buf[512];
  std::snprintf(buf, sizeof buf, "%.40f", std::fabs(v));
  const char* dot = std::strchr(buf, '.');
  if (dot == nullptr || std::strlen(dot) < 4) return false;
  if (dot[3] != '5') return false;
  for (const char* p = dot + 4; *p; ++p) {
    if (*p != '0') return false;
  }
  return true;
}

std::string group_thousands(const std::string& digits) {
  std::string out;
  const auto n = digits.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0 && (n - i) % 3 == 0) out += ',';
    out += digits[i];
  }
  return out;
}

}  // namespace

std::string fixed2(double value, bool grouping) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  double v = value;
  if (is_exact_tie(v)) v += std::copysign(0.0025, v);
  char buf[512];
  std::snprintf(buf, sizeof buf, "%.2f", std::fabs(v));
  std::string body(buf);
  const bool negative = std::signbit(v) && body != "0.00";
  if (grouping) {
    const auto dot = body.find('.');
    body = group_thousands(body.substr(0, dot)) + body.substr(dot);
  }
  return negative ? "-" + body : body;
}

double round2(double value) {
  std::string s = fixed2(value, false);
  return std::strtod(s.c_str(), nullptr);
}

TextTable::TextTable(std::vector<std::string> header) {
  rows_.push_back(std::move(header));
}

void TextTable::add_row(std::vector<std::string> cells) {
  rows_.push_back(std::move(cells));
}

std::string TextTable::render() const {
  std::size_t ncols = 0;
  for (const auto& r : rows_) ncols = std::max(ncols, r.size());
  std::vector<std::size_t> width(ncols, 0);
  for (const auto& r : rows_) {
    for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
  }
  std::string out;
  for (const auto& r : rows_) {
    std::string line;
    for (std::size_t c = 0; c < ncols; ++c) {
      const std::string cell = c < r.size() ? r[c] : "";
      if (c == 0) {
        line += cell + std::string(width[c] - cell.size(), ' ');
      } else {
        line += "  " + std::string(width[c] - cell.size(), ' ') + cell;
      }
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + '\n';
  }
  return out;
}

}  // namespace varpart
