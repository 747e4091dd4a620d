#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

namespace nsas {

/// Lower-case hex SHA-256 digest.
std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::filesystem::path& path);

/// Build identifier compiled into the library.
std::string build_id();

struct ReproducibilityStamp {
  std::string config_hash;
  std::string series_hash;
  std::uint64_t seed = 0;
  std::string build;
  int threads = 1;
  double wall_seconds = 0.0;

  /// JSON object, keys in a fixed order.
  std::string to_json() const;
};

void write_stamp(const std::filesystem::path& path, const ReproducibilityStamp& stamp);

}  // namespace nsas
