#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "wfl/bounds.hpp"
#include "wfl/common.hpp"
#include "wfl/group.hpp"
#include "wfl/subgroup.hpp"

namespace wfl {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitCap = 3;

inline constexpr const char* kSchemaVersion = "1";

/// Runs one command line (without the program name). Writes a JSON document to
/// `out` and diagnostics to `err`; returns the exit code.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// trivial | whole | center | derived | radical | char:<order> | gen:<i,j,...>
SubgroupHandle select_subgroup(const FiniteGroup& g, const std::string& selector,
                               const Limits& limits = default_limits());

nlohmann::json log_number_json(const LogNumber& v);

/// Append-only JSON-lines store of results keyed by request digest.
class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path dir);

  /// SHA-256 of the canonical request serialization plus the library version.
  static std::string digest(const nlohmann::json& request);

  std::optional<nlohmann::json> lookup(const std::string& digest, std::ostream& err) const;
  void store(const std::string& digest, const nlohmann::json& record) const;

  const std::filesystem::path& file() const { return file_; }

 private:
  std::filesystem::path file_;
};

struct BatteryEntry {
  std::string id;
  std::vector<std::string> args;
};

/// Manifest: a JSON list of {"id": ..., "check": <verify subcommand>, <option>: <value>, ...}.
std::vector<BatteryEntry> load_manifest(const std::filesystem::path& path);

/// Runs all checks, writes <out>/<id>.json per check, and returns the summary.
/// `exit_code` is 0 iff every check passed or was sampled without violation.
nlohmann::json run_battery(const std::vector<BatteryEntry>& entries, const std::filesystem::path& out_dir,
                           const Limits& limits, int& exit_code);

}  // namespace wfl
