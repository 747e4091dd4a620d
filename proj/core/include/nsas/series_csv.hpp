#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

namespace nsas {

/// Column order of the full-system series file.
inline const std::vector<std::string> kNsSeriesColumns = {
    "t",        "L2_u",     "L2_du",   "L2_d2u",           "L2_d3u",           "L2_d4u",
    "L2_tilde", "H1_tilde", "L2_ubar_minus_eta", "H1_ubar_minus_eta", "M_t", "N_t"};

/// Column order of the profile series file.
inline const std::vector<std::string> kProfileSeriesColumns = {"t", "L2_eta", "L2_dy_eta", "H2_eta_sq", "N_t",
                                                               "M0_t"};

/// Formats a value with round-trip precision; NaN becomes an empty field.
std::string format_csv_value(double v);

/// Row-at-a-time CSV writer that flushes after every row.
class SeriesWriter {
 public:
  SeriesWriter(const std::filesystem::path& path, std::vector<std::string> columns);
  /// NaN entries are written as blanks.  Throws ShapeError on a width mismatch.
  void write_row(const std::vector<double>& values);
  const std::vector<std::string>& columns() const noexcept { return columns_; }

 private:
  std::ofstream os_;
  std::vector<std::string> columns_;
};

/// Same formatting into a string, used for hashing and tests.
std::string format_csv(const std::vector<std::string>& columns, const std::vector<std::vector<double>>& rows);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  /// Blank fields come back as NaN.  Throws DataError for unknown columns.
  std::vector<double> column(const std::string& name) const;
  bool has_column(const std::string& name) const;
};

CsvTable read_csv(const std::filesystem::path& path);

}  // namespace nsas
