#include "nsas/series_csv.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "nsas/error.hpp"

namespace nsas {

std::string format_csv_value(double v) {
  if (std::isnan(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string join_row(const std::vector<double>& values) {
  std::string line;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) line += ',';
    line += format_csv_value(values[i]);
  }
  return line;
}

std::string join_header(const std::vector<std::string>& columns) {
  std::string line;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) line += ',';
    line += columns[i];
  }
  return line;
}

}  // namespace

SeriesWriter::SeriesWriter(const std::filesystem::path& path, std::vector<std::string> columns)
    : os_(path, std::ios::trunc), columns_(std::move(columns)) {
  if (!os_) throw IoError("cannot open series file " + path.string());
  os_ << join_header(columns_) << '\n';
  os_.flush();
}

void SeriesWriter::write_row(const std::vector<double>& values) {
  if (values.size() != columns_.size()) throw ShapeError("series row width does not match the header");
  os_ << join_row(values) << '\n';
  os_.flush();
  if (!os_) throw IoError("failed writing series row");
}

std::string format_csv(const std::vector<std::string>& columns, const std::vector<std::vector<double>>& rows) {
  std::string out = join_header(columns) + '\n';
  for (const auto& r : rows) out += join_row(r) + '\n';
  return out;
}

bool CsvTable::has_column(const std::string& name) const {
  for (const auto& h : header)
    if (h == name) return true;
  return false;
}

std::vector<double> CsvTable::column(const std::string& name) const {
  for (std::size_t c = 0; c < header.size(); ++c)
    if (header[c] == name) {
      std::vector<double> out;
      out.reserve(rows.size());
      for (const auto& r : rows) out.push_back(r[c]);
      return out;
    }
  throw DataError("series has no column '" + name + "'");
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open " + path.string());
  CsvTable t;
  std::string line;
  auto split = [](const std::string& s) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream ss(s);
    while (std::getline(ss, cur, ',')) parts.push_back(cur);
    if (!s.empty() && s.back() == ',') parts.emplace_back();
    return parts;
  };
  if (!std::getline(is, line)) throw DataError("empty csv file " + path.string());
  t.header = split(line);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto parts = split(line);
    if (parts.size() != t.header.size()) throw DataError("csv row width mismatch in " + path.string());
    std::vector<double> row;
    for (const auto& p : parts) {
      if (p.empty()) {
        row.push_back(std::numeric_limits<double>::quiet_NaN());
        continue;
      }
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(p, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != p.size()) throw DataError("non-numeric csv field '" + p + "'");
      row.push_back(v);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace nsas
