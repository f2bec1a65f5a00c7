#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scl/types.hpp"

// Run manifest: what a run emitted, each file with a content digest. The digests of
// the emitted files are reproducible for a fixed config; the manifest additionally
// records wall time, which is why wall time appears nowhere else.
namespace scl {

std::uint64_t fnv1a64(const void* data, std::size_t size);
std::string content_digest(const std::string& bytes);  // "fnv1a64:<16 hex digits>"

struct ManifestEntry {
  std::string name;    // path relative to the output directory
  std::string digest;  // content_digest of the bytes written
};

struct RunManifest {
  std::string config_path;
  std::string config_json;  // resolved config, as config_to_json_text
  std::string output_dir;
  std::vector<ManifestEntry> files;
  std::string version;
  std::uint64_t seed = 0;
  Scalar wall_time_seconds = 0.0;
};

std::string to_json(const RunManifest& manifest);

}  // namespace scl
