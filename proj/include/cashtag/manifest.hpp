#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "cashtag/corpus.hpp"

namespace cashtag::manifest {

inline constexpr const char *kToolVersion = "cashtag 1.0.0";

// FNV-1a, 64 bit.
std::uint64_t fnv1a64(const void *data, std::size_t n);
std::uint64_t fnv1a64(const std::string &bytes);

// Content hashes rendered as "fnv1a64:<16 hex digits>".
std::string fingerprint_bytes(const std::string &bytes);
std::string fingerprint_file(const std::string &path);
std::string fingerprint_dataset(const corpus::Dataset &data);

// Written next to every command's outputs.  The timestamp is the only
// wall-clock value in any artifact; replay comparisons skip the manifest.
struct RunManifest {
  std::string command;
  std::vector<std::string> argv;  // exact invocation, for replay
  std::string tool_version = kToolVersion;
  std::string timestamp;  // ISO-8601 UTC
  nlohmann::json seeds = nlohmann::json::object();
  struct Entry {
    std::string path;
    std::string fingerprint;
  };
  std::vector<Entry> inputs;
  std::vector<Entry> outputs;
};

std::string now_timestamp();

nlohmann::json manifest_to_json(const RunManifest &m);
RunManifest manifest_from_json(const nlohmann::json &j);
void write_manifest(const RunManifest &m, const std::string &path);
RunManifest load_manifest(const std::string &path);

}  // namespace cashtag::manifest
