#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace solitonlab {

/// Every key accepted in a config file or on the command line.
const std::set<std::string, std::less<>>& known_keys();

/// Flat key=value configuration. Blank lines and lines starting with '#' are ignored.
class Config {
 public:
  /// Throws ConfigError naming the key for unknown keys or malformed lines.
  static Config parse(std::string_view text);

  /// Reads a key=value file, or the "config" object of a run manifest (JSON).
  static Config load(const std::filesystem::path& path);

  /// Throws ConfigError for unknown keys.
  void set(const std::string& key, const std::string& value);
  /// Parses "key=value".
  void set_assignment(std::string_view assignment);

  bool has(std::string_view key) const { return values_.find(key) != values_.end(); }
  const std::map<std::string, std::string, std::less<>>& values() const { return values_; }

  /// Throws ConfigError("missing required key ...") naming the key.
  const std::string& require(std::string_view key) const;
  double number(std::string_view key) const;
  double number_or(std::string_view key, double fallback) const;
  std::size_t count(std::string_view key) const;
  std::size_t count_or(std::string_view key, std::size_t fallback) const;
  std::string text_or(std::string_view key, std::string fallback) const;
  /// Comma-separated list of numbers.
  std::vector<double> numbers(std::string_view key) const;

  /// Sorted key=value lines; the hashed form of the configuration.
  std::string canonical() const;

 private:
  std::map<std::string, std::string, std::less<>> values_;
};

/// 64-bit FNV-1a of the canonical text without output.dir, as 16 hex digits.
std::string config_hash(const Config& config);

}  // namespace solitonlab
