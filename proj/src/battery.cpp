#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

#include "wfl/cli.hpp"

namespace wfl {

using nlohmann::json;

std::vector<BatteryEntry> load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open manifest " + path.string());
  json doc = json::parse(in, nullptr, false);
  if (doc.is_discarded() || !doc.is_array()) throw InputError("manifest must be a JSON list");
  std::vector<BatteryEntry> entries;
  std::size_t k = 0;
  for (const auto& item : doc) {
    ++k;
    if (!item.is_object() || !item.contains("check") || !item["check"].is_string())
      throw InputError("manifest entry " + std::to_string(k) + " needs a \"check\" field");
    BatteryEntry e;
    e.id = item.value("id", "check" + std::to_string(k));
    if (e.id.empty() || e.id.find('/') != std::string::npos)
      throw InputError("manifest entry " + std::to_string(k) + " has an unusable id");
    std::string check = item["check"];
    if (check == "battery") throw InputError("manifests cannot nest batteries");
    e.args = {"verify", check};
    for (const auto& [key, value] : item.items()) {
      if (key == "id" || key == "check") continue;
      if (value.is_boolean()) {
        if (value.get<bool>()) e.args.push_back("--" + key);
      } else if (value.is_string()) {
        e.args.push_back("--" + key);
        e.args.push_back(value.get<std::string>());
      } else if (value.is_number_integer()) {
        e.args.push_back("--" + key);
        e.args.push_back(std::to_string(value.get<long long>()));
      } else {
        throw InputError("manifest entry '" + e.id + "': option " + key + " must be a string, integer or bool");
      }
    }
    entries.push_back(std::move(e));
  }
  return entries;
}

json run_battery(const std::vector<BatteryEntry>& entries, const std::filesystem::path& out_dir,
                 const Limits& limits, int& exit_code) {
  std::filesystem::create_directories(out_dir);
  struct Done {
    int code = 0;
    std::string status;
    std::string error;
  };
  std::vector<Done> done(entries.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < entries.size(); i = next++) {
      std::vector<std::string> args = entries[i].args;
      args.insert(args.begin(), {"--threads", "1", "--budget", std::to_string(limits.budget), "--no-cache"});
      std::ostringstream out, err;
      done[i].code = run_command(args, out, err);
      json doc = json::parse(out.str(), nullptr, false);
      done[i].status = doc.is_object() ? doc.value("status", "error") : "error";
      done[i].error = err.str();
      std::ofstream f(out_dir / (entries[i].id + ".json"));
      f << out.str();
    }
  };
  unsigned threads = std::max(1u, std::min<unsigned>(limits.threads, static_cast<unsigned>(entries.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  json checks = json::array();
  std::size_t passed = 0, failed = 0, sampled = 0, errors = 0;
  bool cap = false, usage = false;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& d = done[i];
    if (d.status == "pass") ++passed;
    else if (d.status == "inconclusive-sampled") ++sampled;
    else if (d.status == "fail") ++failed;
    else {
      ++errors;
      cap |= d.code == kExitCap;
      usage |= d.code != kExitCap;
    }
    json c = {{"id", entries[i].id}, {"status", d.status}, {"exit_code", d.code}};
    if (d.status != "pass" && d.status != "inconclusive-sampled" && d.status != "fail" && !d.error.empty())
      c["error"] = d.error;
    checks.push_back(std::move(c));
  }
  exit_code = failed ? kExitCheckFailed : cap ? kExitCap : usage ? kExitUsage : kExitOk;
  return {{"total", entries.size()},
          {"pass", passed},
          {"fail", failed},
          {"inconclusive_sampled", sampled},
          {"errors", errors},
          {"checks", checks}};
}

}  // namespace wfl
