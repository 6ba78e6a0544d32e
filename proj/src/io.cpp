#include "solitonlab/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "solitonlab/error.hpp"

namespace solitonlab {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return {buf, res.ptr};
}

const std::vector<double>& Table::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return columns[i];
  }
  throw AnalysisError("column '" + std::string(name) + "' not found");
}

std::string to_csv(const Table& table) {
  std::string out;
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    if (c) out += ',';
    out += table.header[c];
  }
  out += '\n';
  for (std::size_t r = 0; r < table.rows(); ++r) {
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      if (c) out += ',';
      out += format_double(table.columns[c][r]);
    }
    out += '\n';
  }
  return out;
}

void write_csv(const std::filesystem::path& path, const Table& table) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << to_csv(table);
  if (!f) throw std::runtime_error("write failed for " + path.string());
}

Table parse_csv(std::string_view text) {
  Table t;
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw AnalysisError("empty CSV");
  {
    std::istringstream h(line);
    std::string name;
    while (std::getline(h, name, ',')) {
      while (!name.empty() && (name.back() == '\r' || name.back() == ' ')) name.pop_back();
      t.header.push_back(name);
    }
  }
  t.columns.resize(t.header.size());
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    ++row;
    std::size_t col = 0;
    const char* p = line.data();
    const char* end = line.data() + line.size();
    while (p <= end && col < t.header.size()) {
      double v = 0.0;
      const auto res = std::from_chars(p, end, v);
      if (res.ec != std::errc()) {
        throw AnalysisError("CSV row " + std::to_string(row) + " column " + std::to_string(col) +
                            " is not a number");
      }
      t.columns[col++].push_back(v);
      p = res.ptr;
      if (p < end && *p == ',') ++p;
      else break;
    }
    if (col != t.header.size()) {
      throw AnalysisError("CSV row " + std::to_string(row) + " has " + std::to_string(col) +
                          " fields, expected " + std::to_string(t.header.size()));
    }
  }
  return t;
}

Table read_csv(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("input", "cannot read " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_csv(ss.str());
}

}  // namespace solitonlab
