#include "softrgg/app/csv.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "softrgg/error.hpp"

namespace srgg::app {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

double parse_number(const std::string& text) {
  if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (text == "inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  double value = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size())
    throw InvalidParameter("not a number: '" + text + "'");
  return value;
}

void write_csv(std::ostream& out, const CsvTable& table) {
  for (std::size_t i = 0; i < table.header.size(); ++i)
    out << (i ? "," : "") << table.header[i];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i]);
    out << '\n';
  }
}

std::string to_csv_string(const CsvTable& table) {
  std::ostringstream out;
  write_csv(out, table);
  return out.str();
}

namespace {
std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}
}  // namespace

CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw InvalidParameter("CSV input is empty");
  table.header = split_commas(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_commas(line);
    if (cells.size() != table.header.size())
      throw InvalidParameter("CSV row width does not match the header");
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& c : cells) row.push_back(parse_number(c));
    table.rows.push_back(std::move(row));
  }
  return table;
}

const std::vector<std::string>& sweep_columns() {
  static const std::vector<std::string> columns{
      "axis_value", "r_c",          "p_dis",           "p_dis_lo",        "p_dis_hi",
      "p_iso",      "p_iso_lo",     "p_iso_hi",        "p_ucg",           "p_ucg_lo",
      "p_ucg_hi",   "p_iso_or_ucg", "p_iso_or_ucg_lo", "p_iso_or_ucg_hi", "mean_n_iso",
      "var_n_iso",  "th_expected_iso", "th_poisson_p", "th_cv_bound",     "th_ucg_lower"};
  return columns;
}

CsvTable sweep_table(const SweepResult& result) {
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  CsvTable table;
  table.header = sweep_columns();
  for (const PointResult& p : result.points) {
    if (p.error) {
      std::vector<double> row(table.header.size(), nan);
      row[0] = p.axis_value;
      table.rows.push_back(std::move(row));
      continue;
    }
    const auto& e = p.empirical;
    const auto& t = p.theory;
    table.rows.push_back({p.axis_value,        p.r_c_used,          e.p_dis.p,
                          e.p_dis.lo,          e.p_dis.hi,          e.p_iso.p,
                          e.p_iso.lo,          e.p_iso.hi,          e.p_ucg.p,
                          e.p_ucg.lo,          e.p_ucg.hi,          e.p_iso_or_ucg.p,
                          e.p_iso_or_ucg.lo,   e.p_iso_or_ucg.hi,   e.mean_n_iso,
                          e.var_n_iso,         t.expected_isolated, t.prob_iso_poisson,
                          t.cv_squared_upper,  t.expected_ucg_lower});
  }
  return table;
}

}  // namespace srgg::app
