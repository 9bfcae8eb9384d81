#pragma once

#include <string>
#include <utility>
#include <vector>

namespace patind::cli {

// Two-column numeric input: comma- or whitespace-separated, decimal point
// only, optional single header line (auto-detected).  Any other malformed
// row is a hard error.
struct XYData {
  std::vector<double> x;
  std::vector<double> y;
  bool had_header = false;
};

XYData read_xy_csv(const std::string& path);
XYData parse_xy_csv(std::istream& in, const std::string& origin);

}  // namespace patind::cli
