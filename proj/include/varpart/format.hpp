#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace varpart {

/// Two decimals, ties rounded away from zero, with thousands separators
/// (26,196.21). Negative zero prints as 0.00.
std::string fixed2(double value, bool grouping = true);

/// Rounds half away from zero to two decimals, the value fixed2 prints.
double round2(double value);

/// Plain-text table: first column left-aligned, the rest right-aligned.
class TextTable {
 public:
  explicit TextTable(std::vector<std::string> header);

  void add_row(std::vector<std::string> cells);
  std::string render() const;

 private:
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace varpart
