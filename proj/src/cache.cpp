#include <fstream>
#include <iomanip>
#include <mutex>
#include <sstream>

#include <openssl/evp.h>

#include "wfl/cli.hpp"

namespace wfl {

namespace {

std::mutex& writer_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

ResultCache::ResultCache(std::filesystem::path dir) {
  std::filesystem::create_directories(dir);
  file_ = dir / "results.jsonl";
}

std::string ResultCache::digest(const nlohmann::json& request) {
  std::string payload = request.dump() + "\n" + kVersion;
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(payload.data(), payload.size(), md, &len, EVP_sha256(), nullptr);
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return hex.str();
}

std::optional<nlohmann::json> ResultCache::lookup(const std::string& digest, std::ostream& err) const {
  std::ifstream in(file_);
  if (!in) return std::nullopt;
  std::string line;
  std::size_t lineno = 0;
  std::optional<nlohmann::json> found;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto rec = nlohmann::json::parse(line, nullptr, false);
    if (rec.is_discarded() || !rec.is_object() || !rec.contains("digest")) {
      err << "warning: skipping corrupt cache line " << lineno << " in " << file_.string() << "\n";
      continue;
    }
    if (rec["digest"] == digest) found = std::move(rec);
  }
  return found;
}

void ResultCache::store(const std::string& digest, const nlohmann::json& record) const {
  nlohmann::json rec = record;
  rec["digest"] = digest;
  std::lock_guard lock(writer_mutex());
  std::ofstream out(file_, std::ios::app);
  out << rec.dump() << "\n";
}

}  // namespace wfl
