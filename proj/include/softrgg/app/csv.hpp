#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "softrgg/montecarlo.hpp"

namespace srgg::app {

/// Shortest decimal text that parses back to the same double ("nan" for NaN).
std::string format_number(double x);
double parse_number(const std::string& text);

/// Numeric table with a header row. UTF-8, comma separated, '\n' newlines.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  friend bool operator==(const CsvTable&, const CsvTable&) = default;
};

void write_csv(std::ostream& out, const CsvTable& table);
std::string to_csv_string(const CsvTable& table);
/// Throws InvalidParameter on ragged rows or unparsable cells.
CsvTable read_csv(std::istream& in);

/// Column order of sweep.csv.
const std::vector<std::string>& sweep_columns();

/// One row per sweep point; failed points carry NaN outside axis_value.
CsvTable sweep_table(const SweepResult& result);

}  // namespace srgg::app
