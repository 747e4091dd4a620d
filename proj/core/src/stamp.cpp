#include "nsas/stamp.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "nsas/error.hpp"

#ifndef NSAS_BUILD_ID
#define NSAS_BUILD_ID "unknown"
#endif

namespace nsas {

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error("SHA-256 computation failed");
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open " + path.string());
  std::stringstream ss;
  ss << is.rdbuf();
  return sha256_hex(ss.str());
}

std::string build_id() { return NSAS_BUILD_ID; }

std::string ReproducibilityStamp::to_json() const {
  std::ostringstream os;
  char wall[32];
  std::snprintf(wall, sizeof wall, "%.3f", wall_seconds);
  os << "{\n"
     << "  \"config_sha256\": \"" << config_hash << "\",\n"
     << "  \"series_sha256\": \"" << series_hash << "\",\n"
     << "  \"seed\": " << seed << ",\n"
     << "  \"build\": \"" << build << "\",\n"
     << "  \"threads\": " << threads << ",\n"
     << "  \"wall_seconds\": " << wall << "\n"
     << "}\n";
  return os.str();
}

void write_stamp(const std::filesystem::path& path, const ReproducibilityStamp& stamp) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw IoError("cannot write stamp " + path.string());
  os << stamp.to_json();
}

}  // namespace nsas
