#include "curveflow/curve_io.hpp"

#include <cstdio>
#include <fstream>
#include <string>

namespace curveflow {

namespace {

std::string strip(std::string line) {
  while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) {
    line.pop_back();
  }
  std::size_t start = 0;
  while (start < line.size() && (line[start] == ' ' || line[start] == '\t')) ++start;
  return line.substr(start);
}

}  // namespace

PlanarCurve read_curve_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open curve file " + path.string());

  std::string line;
  if (!std::getline(in, line) || strip(line) != "x,y") {
    throw ParseError(path.string() + ":1: expected the header \"x,y\"");
  }

  std::vector<Vec2> nodes;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string row = strip(line);
    if (row.empty()) continue;
    const std::size_t comma = row.find(',');
    if (comma == std::string::npos) {
      throw ParseError(path.string() + ":" + std::to_string(line_no) + ": expected \"x,y\"");
    }
    std::size_t used_x = 0, used_y = 0;
    double x = 0.0, y = 0.0;
    try {
      x = std::stod(row.substr(0, comma), &used_x);
      y = std::stod(row.substr(comma + 1), &used_y);
    } catch (const std::exception&) {
      throw ParseError(path.string() + ":" + std::to_string(line_no) + ": malformed number");
    }
    if (used_x != comma || used_y != row.size() - comma - 1) {
      throw ParseError(path.string() + ":" + std::to_string(line_no) + ": trailing characters");
    }
    nodes.push_back({x, y});
  }
  return PlanarCurve(std::move(nodes));
}

void write_curve_csv(const std::filesystem::path& path, const PlanarCurve& curve) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << "x,y\n";
  char row[80];
  for (const Vec2& p : curve.nodes()) {
    std::snprintf(row, sizeof row, "%.17g,%.17g\n", p.x, p.y);
    out << row;
  }
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace curveflow
