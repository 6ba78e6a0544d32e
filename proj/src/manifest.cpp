#include "solitonlab/manifest.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <json.hpp>
#include <limits>

#include "solitonlab/error.hpp"

namespace solitonlab {

using nlohmann::json;

namespace {

json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double get_num(const json& j, const char* key) {
  const json& v = j.at(key);
  return v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>();
}

json params_json(const PhysicalParams& p) {
  return {{"t", num(p.t)}, {"V", num(p.V)}, {"U", num(p.U)}, {"rho0", num(p.rho0)}};
}

PhysicalParams params_from(const json& j) {
  return {get_num(j, "t"), get_num(j, "V"), get_num(j, "U"), get_num(j, "rho0")};
}

json groups_json(const DerivedGroups& d) {
  return {{"side", std::string(to_string(d.side))},
          {"params", params_json(d.params)},
          {"g", num(d.g)},
          {"mu", num(d.mu)},
          {"h_z", num(d.h_z)},
          {"rho_s0", num(d.rho_s0)},
          {"c_s", num(d.c_s)},
          {"c_g", num(d.c_g)},
          {"c0", num(d.c0)},
          {"Lambda", num(d.Lambda)},
          {"v", num(d.v)},
          {"vbar", num(d.vbar)},
          {"gamma", num(d.gamma)},
          {"zeta", num(d.zeta)},
          {"xi", num(d.xi)},
          {"width_s", num(d.width_s)},
          {"width_g", num(d.width_g)}};
}

DerivedGroups groups_from(const json& j) {
  DerivedGroups d;
  d.side = j.at("side").get<std::string>() == "gpe" ? Side::gpe : Side::hgpe;
  d.params = params_from(j.at("params"));
  d.g = get_num(j, "g");
  d.mu = get_num(j, "mu");
  d.h_z = get_num(j, "h_z");
  d.rho_s0 = get_num(j, "rho_s0");
  d.c_s = get_num(j, "c_s");
  d.c_g = get_num(j, "c_g");
  d.c0 = get_num(j, "c0");
  d.Lambda = get_num(j, "Lambda");
  d.v = get_num(j, "v");
  d.vbar = get_num(j, "vbar");
  d.gamma = get_num(j, "gamma");
  d.zeta = get_num(j, "zeta");
  d.xi = get_num(j, "xi");
  d.width_s = get_num(j, "width_s");
  d.width_g = get_num(j, "width_g");
  return d;
}

bool same(double a, double b) { return (std::isnan(a) && std::isnan(b)) || a == b; }

bool same_groups(const DerivedGroups& a, const DerivedGroups& b) {
  return a.side == b.side && a.params == b.params && same(a.g, b.g) && same(a.mu, b.mu) &&
         same(a.h_z, b.h_z) && same(a.rho_s0, b.rho_s0) && same(a.c_s, b.c_s) &&
         same(a.c_g, b.c_g) && same(a.c0, b.c0) && same(a.Lambda, b.Lambda) && same(a.v, b.v) &&
         same(a.vbar, b.vbar) && same(a.gamma, b.gamma) && same(a.zeta, b.zeta) &&
         same(a.xi, b.xi) && same(a.width_s, b.width_s) && same(a.width_g, b.width_g);
}

}  // namespace

std::string RunManifest::to_json() const {
  json j;
  j["tool"] = tool;
  j["version"] = version;
  j["subcommand"] = subcommand;
  j["config"] = config;
  j["config_hash"] = config_hash;
  j["timestamp"] = timestamp;
  if (params) j["params"] = params_json(*params);
  if (groups) j["derived"] = groups_json(*groups);
  j["scheme"] = scheme;
  if (dt) j["dt"] = num(*dt);
  if (grid_n || grid_length) {
    json g;
    if (grid_n) g["n"] = *grid_n;
    if (grid_length) g["length"] = num(*grid_length);
    j["grid"] = g;
  }
  if (kappa) j["kappa"] = num(*kappa);
  json cons = json::object();
  for (const auto& [k, v] : conservation) cons[k] = num(v);
  j["conservation"] = cons;
  j["artifacts"] = artifacts;
  return j.dump(2) + "\n";
}

RunManifest RunManifest::from_json(std::string_view text) {
  try {
    const json j = json::parse(text);
    RunManifest m;
    m.tool = j.at("tool").get<std::string>();
    m.version = j.at("version").get<std::string>();
    m.subcommand = j.at("subcommand").get<std::string>();
    m.config = j.at("config").get<std::map<std::string, std::string>>();
    m.config_hash = j.at("config_hash").get<std::string>();
    m.timestamp = j.at("timestamp").get<std::string>();
    if (j.contains("params")) m.params = params_from(j["params"]);
    if (j.contains("derived")) m.groups = groups_from(j["derived"]);
    m.scheme = j.at("scheme").get<std::map<std::string, std::string>>();
    if (j.contains("dt")) m.dt = get_num(j, "dt");
    if (j.contains("grid")) {
      const json& g = j["grid"];
      if (g.contains("n")) m.grid_n = g["n"].get<std::size_t>();
      if (g.contains("length")) m.grid_length = get_num(g, "length");
    }
    if (j.contains("kappa")) m.kappa = get_num(j, "kappa");
    for (const auto& [k, v] : j.at("conservation").items()) {
      m.conservation[k] = v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>();
    }
    m.artifacts = j.at("artifacts").get<std::vector<std::string>>();
    return m;
  } catch (const json::exception& e) {
    throw ConfigError("manifest", std::string("malformed manifest: ") + e.what());
  }
}

bool same_manifest(const RunManifest& a, const RunManifest& b) {
  auto same_opt = [](const std::optional<double>& x, const std::optional<double>& y) {
    return x.has_value() == y.has_value() && (!x || same(*x, *y));
  };
  if (a.tool != b.tool || a.version != b.version || a.subcommand != b.subcommand ||
      a.config != b.config || a.config_hash != b.config_hash || a.timestamp != b.timestamp ||
      a.params != b.params || a.scheme != b.scheme || !same_opt(a.dt, b.dt) ||
      a.grid_n != b.grid_n || !same_opt(a.grid_length, b.grid_length) ||
      !same_opt(a.kappa, b.kappa) || a.artifacts != b.artifacts ||
      a.groups.has_value() != b.groups.has_value() ||
      a.conservation.size() != b.conservation.size()) {
    return false;
  }
  if (a.groups && !same_groups(*a.groups, *b.groups)) return false;
  for (const auto& [k, v] : a.conservation) {
    const auto it = b.conservation.find(k);
    if (it == b.conservation.end() || !same(v, it->second)) return false;
  }
  return true;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::filesystem::path write_manifest(const std::filesystem::path& dir, const RunManifest& m) {
  for (const auto& a : m.artifacts) {
    if (!std::filesystem::exists(dir / a)) {
      throw std::runtime_error("manifest lists missing artifact " + (dir / a).string());
    }
  }
  const auto path = dir / "manifest.json";
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << m.to_json();
  return path;
}

}  // namespace solitonlab
