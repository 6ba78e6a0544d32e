#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace solitonlab {

/// General format with 17 significant digits, which round-trips every double.
std::string format_double(double v);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;

  std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
  /// Throws AnalysisError when the column is absent.
  const std::vector<double>& column(std::string_view name) const;
};

/// One header line, comma separated, 17 significant digits.
void write_csv(const std::filesystem::path& path, const Table& table);
std::string to_csv(const Table& table);

Table read_csv(const std::filesystem::path& path);
Table parse_csv(std::string_view text);

}  // namespace solitonlab
