#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace diracml {

/// Rows of preformatted cells; numbers go through format_number.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> cells);
};

/// Shortest round-trip form with at most 17 significant digits.
std::string format_number(double x);

void write_csv(const CsvTable& table, std::ostream& os);
/// Throws on an empty table or I/O failure; nothing is written for an empty table.
void write_csv(const CsvTable& table, const std::string& path);

struct SvgSeries {
  std::string label;
  std::vector<double> x, y;
};

/// Log-log plot; nonpositive points are skipped.
void write_loglog_svg(const std::vector<SvgSeries>& series, const std::string& title, const std::string& xlabel,
                      const std::string& ylabel, const std::string& path);

}  // namespace diracml
