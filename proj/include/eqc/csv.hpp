#pragma once

#include <string>
#include <vector>

#include "eqc/fitting.hpp"

namespace eqc {

inline constexpr const char* kVersion = "0.1.0";

// RFC-4180-style CSV with '#'-prefixed comment lines. Numbers are printed
// with a fixed "%.10g" format so identical runs produce identical bytes.
struct CsvTable {
  std::vector<std::string> comments;  // without the leading '#'
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

std::string format_number(double v);
void write_csv(const std::string& path, const CsvTable& table);
CsvTable read_csv(const std::string& path);

// First three columns interpreted as (d, mean, std_error).
std::vector<FitPoint> curve_from_csv(const CsvTable& table);

}  // namespace eqc
