#include "scl/manifest.hpp"

#include <cstdio>
#include <json.hpp>

namespace scl {

std::uint64_t fnv1a64(const void* data, std::size_t size) {
  const unsigned char* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::size_t i = 0; i < size; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string content_digest(const std::string& bytes) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx",
                static_cast<unsigned long long>(fnv1a64(bytes.data(), bytes.size())));
  return buf;
}

std::string to_json(const RunManifest& m) {
  nlohmann::ordered_json j;
  j["config_path"] = m.config_path;
  j["config"] = nlohmann::ordered_json::parse(m.config_json);
  j["output_dir"] = m.output_dir;
  nlohmann::ordered_json files = nlohmann::ordered_json::array();
  for (const ManifestEntry& e : m.files)
    files.push_back({{"name", e.name}, {"digest", e.digest}});
  j["files"] = files;
  j["version"] = m.version;
  j["seed"] = m.seed;
  j["wall_time_seconds"] = m.wall_time_seconds;
  return j.dump(2);
}

}  // namespace scl
