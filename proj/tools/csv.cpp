#include "csv.hpp"

#include <fstream>
#include <istream>
#include <sstream>

#include "patind/errors.hpp"

namespace patind::cli {

namespace {

std::vector<std::string> split_cells(const std::string& line) {
  std::vector<std::string> cells;
  if (line.find(',') != std::string::npos) {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
  } else {
    std::stringstream ss(line);
    std::string cell;
    while (ss >> cell) cells.push_back(cell);
  }
  for (auto& c : cells) {
    const auto b = c.find_first_not_of(" \t\r");
    const auto e = c.find_last_not_of(" \t\r");
    c = b == std::string::npos ? std::string() : c.substr(b, e - b + 1);
  }
  return cells;
}

bool parse_double(const std::string& s, double* out) {
  if (s.empty()) return false;
  try {
    std::size_t pos = 0;
    *out = std::stod(s, &pos);
    return pos == s.size();
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace

XYData parse_xy_csv(std::istream& in, const std::string& origin) {
  XYData data;
  std::string line;
  int lineno = 0;
  bool first_content = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = split_cells(line);
    if (cells.size() != 2) {
      throw InputFormatError(origin + ":" + std::to_string(lineno) + ": expected 2 columns, got " +
                             std::to_string(cells.size()));
    }
    double x = 0.0, y = 0.0;
    const bool ok = parse_double(cells[0], &x) && parse_double(cells[1], &y);
    if (!ok) {
      if (first_content) {  // a single leading header line is allowed
        data.had_header = true;
        first_content = false;
        continue;
      }
      throw InputFormatError(origin + ":" + std::to_string(lineno) + ": non-numeric cell");
    }
    first_content = false;
    data.x.push_back(x);
    data.y.push_back(y);
  }
  return data;
}

XYData read_xy_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputFormatError("cannot open '" + path + "'");
  return parse_xy_csv(in, path);
}

}  // namespace patind::cli
