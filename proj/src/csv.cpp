#include "eqc/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace eqc {

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

void write_csv(const std::string& path, const CsvTable& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  for (const auto& c : table.comments) out << "# " << c << "\n";
  for (size_t i = 0; i < table.columns.size(); ++i) {
    out << (i ? "," : "") << table.columns[i];
  }
  out << "\n";
  for (const auto& row : table.rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "") << format_number(row[i]);
    }
    out << "\n";
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input file: " + path);
  CsvTable table;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      table.comments.push_back(line.substr(line.size() > 1 && line[1] == ' ' ? 2 : 1));
      continue;
    }
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!header_seen) {
      table.columns = fields;
      header_seen = true;
      continue;
    }
    std::vector<double> row;
    for (const auto& f : fields) {
      try {
        row.push_back(std::stod(f));
      } catch (const std::exception&) {
        throw std::runtime_error("malformed CSV field '" + f + "' in " + path);
      }
    }
    table.rows.push_back(std::move(row));
  }
  if (!header_seen) throw std::runtime_error("CSV has no header row: " + path);
  return table;
}

std::vector<FitPoint> curve_from_csv(const CsvTable& table) {
  std::vector<FitPoint> curve;
  for (const auto& row : table.rows) {
    if (row.size() < 3) throw std::runtime_error("curve rows need (x, mean, std_error)");
    curve.push_back({row[0], row[1], row[2]});
  }
  return curve;
}

}  // namespace eqc
