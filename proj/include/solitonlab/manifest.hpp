#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "solitonlab/params.hpp"

namespace solitonlab {

inline constexpr std::string_view kToolName = "solitonlab";
inline constexpr std::string_view kToolVersion = "1.0.0";

/// Everything needed to identify and reproduce one run.
struct RunManifest {
  std::string tool{kToolName};
  std::string version{kToolVersion};
  std::string subcommand;
  std::map<std::string, std::string> config;  // effective configuration
  std::string config_hash;
  std::string timestamp;  // UTC, ISO 8601; the only field that differs between reruns

  std::optional<PhysicalParams> params;
  std::optional<DerivedGroups> groups;
  std::map<std::string, std::string> scheme;
  std::optional<double> dt;
  std::optional<std::size_t> grid_n;
  std::optional<double> grid_length;
  std::optional<double> kappa;
  std::map<std::string, double> conservation;
  std::vector<std::string> artifacts;  // file names relative to the output directory

  std::string to_json() const;
  /// Throws ConfigError on malformed input.
  static RunManifest from_json(std::string_view text);
};

/// Field-wise equality; NaN compares equal to NaN.
bool same_manifest(const RunManifest& a, const RunManifest& b);

/// Current UTC time as YYYY-MM-DDThh:mm:ssZ.
std::string utc_timestamp();

/// Checks that every listed artifact exists in `dir`, then writes dir/manifest.json.
/// Returns the manifest path.
std::filesystem::path write_manifest(const std::filesystem::path& dir, const RunManifest& m);

}  // namespace solitonlab
