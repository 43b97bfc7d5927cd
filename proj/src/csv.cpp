#include "diracml/csv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace diracml {

void CsvTable::add_row(std::vector<std::string> cells) {
  if (!header.empty() && cells.size() != header.size()) throw std::invalid_argument("csv: row width does not match header");
  rows.push_back(std::move(cells));
}

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_csv(const CsvTable& t, std::ostream& os) {
  auto line = [&os](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << '\n';
  };
  line(t.header);
  for (const auto& r : t.rows) line(r);
}

void write_csv(const CsvTable& t, const std::string& path) {
  if (t.rows.empty()) throw std::invalid_argument("csv: refusing to write an empty table to " + path);
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("csv: cannot open " + path);
  write_csv(t, os);
  if (!os) throw std::runtime_error("csv: write failed for " + path);
}

void write_loglog_svg(const std::vector<SvgSeries>& series, const std::string& title, const std::string& xlabel,
                      const std::string& ylabel, const std::string& path) {
  constexpr double W = 640, H = 480, L = 80, R = 20, T = 40, B = 60;
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!(s.x[i] > 0.0 && s.y[i] > 0.0)) continue;
      x0 = std::min(x0, std::log10(s.x[i]));
      x1 = std::max(x1, std::log10(s.x[i]));
      y0 = std::min(y0, std::log10(s.y[i]));
      y1 = std::max(y1, std::log10(s.y[i]));
    }
  if (!(x1 >= x0) || !(y1 >= y0)) throw std::invalid_argument("svg: no positive data to plot");
  x0 = std::floor(x0);
  x1 = std::max(std::ceil(x1), x0 + 1.0);
  y0 = std::floor(y0);
  y1 = std::max(std::ceil(y1), y0 + 1.0);
  const auto px = [&](double lx) { return L + (lx - x0) / (x1 - x0) * (W - L - R); };
  const auto py = [&](double ly) { return H - B - (ly - y0) / (y1 - y0) * (H - T - B); };

  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("svg: cannot open " + path);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << title << "</text>\n";
  os << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << W - L - R << "\" height=\"" << H - T - B
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (double d = x0; d <= x1 + 1e-9; d += 1.0)
    os << "<text x=\"" << px(d) << "\" y=\"" << H - B + 18 << "\" text-anchor=\"middle\" font-size=\"12\">1e" << d
       << "</text>\n";
  for (double d = y0; d <= y1 + 1e-9; d += 1.0)
    os << "<text x=\"" << L - 6 << "\" y=\"" << py(d) + 4 << "\" text-anchor=\"end\" font-size=\"12\">1e" << d
       << "</text>\n";
  os << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 16 << "\" text-anchor=\"middle\" font-size=\"14\">"
     << xlabel << "</text>\n";
  os << "<text x=\"18\" y=\"" << (T + H - B) / 2 << "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 18 "
     << (T + H - B) / 2 << ")\">" << ylabel << "</text>\n";
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    os << "<polyline fill=\"none\" stroke=\"" << colors[k % 6] << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i)
      if (s.x[i] > 0.0 && s.y[i] > 0.0) os << px(std::log10(s.x[i])) << ',' << py(std::log10(s.y[i])) << ' ';
    os << "\"/>\n";
    os << "<text x=\"" << W - R - 8 << "\" y=\"" << T + 18 + 16 * k << "\" text-anchor=\"end\" font-size=\"12\" fill=\""
       << colors[k % 6] << "\">" << s.label << "</text>\n";
  }
  os << "</svg>\n";
  if (!os) throw std::runtime_error("svg: write failed for " + path);
}

}  // namespace diracml
