#include "manifest.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <openssl/evp.h>

#include <json.hpp>

#include "risplit/textio.hpp"

namespace risplit::tool {

std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("sha256_file: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string bytes = buf.str();

  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(),
                 nullptr) != 1)
    throw std::runtime_error("sha256_file: digest failure");
  static const char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xf];
  }
  return out;
}

void write_manifest(
    const std::string& path, const std::string& command,
    const std::map<std::string, std::map<std::string, std::string>>& resolved,
    std::uint64_t master_seed, double duration_seconds,
    const std::vector<OutputRecord>& outputs) {
  nlohmann::ordered_json j;
  j["tool_version"] = kToolVersion;
  j["command"] = command;
  auto& cfg = j["resolved_config"] = nlohmann::ordered_json::object();
  for (const auto& [section, keys] : resolved) {
    auto& s = cfg[section] = nlohmann::ordered_json::object();
    for (const auto& [key, value] : keys) s[key] = value;
  }
  j["master_seed"] = master_seed;
  j["duration_seconds"] = duration_seconds;
  auto& outs = j["outputs"] = nlohmann::ordered_json::array();
  for (const auto& rec : outputs) {
    nlohmann::ordered_json o;
    o["path"] = rec.name;
    o["sha256"] = rec.sha256;
    o["bytes"] = rec.bytes;
    outs.push_back(std::move(o));
  }
  atomic_write(path, j.dump(2) + "\n");
}

}  // namespace risplit::tool
