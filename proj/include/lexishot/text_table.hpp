#pragma once

#include <string>
#include <vector>

namespace lexishot {

// Aligned-column plain-text table. The first column is left-aligned, the rest
// right-aligned; widths count code points.
class TextTable {
 public:
  explicit TextTable(std::vector<std::string> header) : header_(std::move(header)) {}

  void add_row(std::vector<std::string> row) { rows_.push_back(std::move(row)); }
  std::string render() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

// Fixed-point rendering, e.g. fixed(0.5, 2) == "0.50".
std::string fixed(double value, int digits);

}  // namespace lexishot
