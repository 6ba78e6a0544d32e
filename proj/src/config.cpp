#include "solitonlab/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "solitonlab/error.hpp"

namespace solitonlab {

const std::set<std::string, std::less<>>& known_keys() {
  static const std::set<std::string, std::less<>> keys{
      "t",           "V",           "U",           "rho0",          "vbar",
      "grid.n",      "grid.length", "dt",          "steps",         "output.dir",
      "system",      "init",        "tw",          "branch",        "snapshot.every",
      "pulse.eps",   "pulse.width", "sweep.vbar",  "sweep.mode",    "eps_rho",
      "fit.input",   "fit.column",  "fit.polarity", "spinmap.input"};
  return keys;
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

void Config::set(const std::string& key, const std::string& value) {
  if (!known_keys().contains(key)) throw ConfigError(key, "unknown key '" + key + "'");
  values_[key] = value;
}

void Config::set_assignment(std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    const std::string key = trim(assignment);
    throw ConfigError(key, "expected key=value, got '" + std::string(assignment) + "'");
  }
  set(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

Config Config::parse(std::string_view text) {
  Config c;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    c.set_assignment(t);
  }
  return c;
}

Config Config::load(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("config", "cannot read config file " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  const std::string text = ss.str();
  const std::string head = trim(text);
  if (!head.empty() && head.front() == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("config", std::string("malformed manifest JSON: ") + e.what());
    }
    if (!j.contains("config") || !j["config"].is_object()) {
      throw ConfigError("config", "manifest has no \"config\" object");
    }
    Config c;
    for (const auto& [k, v] : j["config"].items()) c.set(k, v.get<std::string>());
    return c;
  }
  return parse(text);
}

const std::string& Config::require(std::string_view key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) {
    throw ConfigError(std::string(key), "missing required key '" + std::string(key) + "'");
  }
  return it->second;
}

namespace {

double to_number(std::string_view key, std::string_view text) {
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw ConfigError(std::string(key),
                      "key '" + std::string(key) + "' is not a number: '" + std::string(text) + "'");
  }
  return v;
}

std::size_t to_count(std::string_view key, std::string_view text) {
  std::size_t v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw ConfigError(std::string(key), "key '" + std::string(key) +
                                            "' is not a non-negative integer: '" +
                                            std::string(text) + "'");
  }
  return v;
}

}  // namespace

double Config::number(std::string_view key) const { return to_number(key, require(key)); }

double Config::number_or(std::string_view key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

std::size_t Config::count(std::string_view key) const { return to_count(key, require(key)); }

std::size_t Config::count_or(std::string_view key, std::size_t fallback) const {
  return has(key) ? count(key) : fallback;
}

std::string Config::text_or(std::string_view key, std::string fallback) const {
  return has(key) ? require(key) : fallback;
}

std::vector<double> Config::numbers(std::string_view key) const {
  std::vector<double> out;
  std::istringstream in(require(key));
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(to_number(key, trim(item)));
  if (out.empty()) throw ConfigError(std::string(key), "key '" + std::string(key) + "' is empty");
  return out;
}

std::string Config::canonical() const {
  std::string out;
  for (const auto& [k, v] : values_) out += k + "=" + v + "\n";
  return out;
}

std::string config_hash(const Config& config) {
  // The output directory does not change results, so reruns elsewhere hash the same.
  std::string text;
  for (const auto& [k, v] : config.values()) {
    if (k != "output.dir") text += k + "=" + v + "\n";
  }
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  static constexpr char kHex[] = "0123456789abcdef";
  for (int i = 15; i >= 0; --i) {
    buf[i] = kHex[h & 0xF];
    h >>= 4;
  }
  buf[16] = '\0';
  return buf;
}

}  // namespace solitonlab
