#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace risplit::tool {

inline constexpr const char* kToolVersion = "0.1.0";

// Hex SHA-256 of a file's bytes; throws std::runtime_error on IO failure.
std::string sha256_file(const std::string& path);

struct OutputRecord {
  std::string name;  // file name relative to the output directory
  std::string sha256;
  std::uint64_t bytes = 0;
};

// Writes manifest.json next to the outputs: tool version, the fully
// expanded configuration, seed, wall-clock duration, and a checksum per
// output file.  Atomic like every other writer.
void write_manifest(
    const std::string& path, const std::string& command,
    const std::map<std::string, std::map<std::string, std::string>>& resolved,
    std::uint64_t master_seed, double duration_seconds,
    const std::vector<OutputRecord>& outputs);

}  // namespace risplit::tool
