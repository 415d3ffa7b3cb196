#include "cashtag/manifest.hpp"

#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include "cashtag/error.hpp"
#include "cashtag/timeutil.hpp"

namespace cashtag::manifest {

std::uint64_t fnv1a64(const void *data, std::size_t n) {
  const auto *p = static_cast<const unsigned char *>(data);
  std::uint64_t h = 14695981039346656037ULL;
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 1099511628211ULL;
  }
  return h;
}

std::uint64_t fnv1a64(const std::string &bytes) {
  return fnv1a64(bytes.data(), bytes.size());
}

namespace {

std::string render(std::uint64_t h) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace

std::string fingerprint_bytes(const std::string &bytes) {
  return render(fnv1a64(bytes));
}

std::string fingerprint_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw make_error("IoError", "cannot open " + path + " for hashing");
  std::uint64_t h = 14695981039346656037ULL;
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof buf);
    const std::streamsize got = in.gcount();
    for (std::streamsize i = 0; i < got; ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 1099511628211ULL;
    }
  }
  if (in.bad()) throw make_error("IoError", "failed reading " + path);
  return render(h);
}

std::string fingerprint_dataset(const corpus::Dataset &data) {
  std::uint64_t h = 14695981039346656037ULL;
  auto mix = [&h](const std::string &s) {
    for (char c : s) {
      h ^= static_cast<unsigned char>(c);
      h *= 1099511628211ULL;
    }
  };
  for (const auto &record : data.records) {
    mix(corpus::record_to_json_line(record));
    h ^= static_cast<unsigned char>('\n');
    h *= 1099511628211ULL;
  }
  return render(h);
}

std::string now_timestamp() {
  return format_timestamp(static_cast<std::int64_t>(std::time(nullptr)));
}

nlohmann::json manifest_to_json(const RunManifest &m) {
  nlohmann::json j;
  j["version"] = 1;
  j["command"] = m.command;
  j["argv"] = m.argv;
  j["tool_version"] = m.tool_version;
  j["timestamp"] = m.timestamp;
  j["seeds"] = m.seeds;
  auto entries = [](const std::vector<RunManifest::Entry> &v) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto &e : v) arr.push_back({{"path", e.path}, {"fingerprint", e.fingerprint}});
    return arr;
  };
  j["inputs"] = entries(m.inputs);
  j["outputs"] = entries(m.outputs);
  return j;
}

RunManifest manifest_from_json(const nlohmann::json &j) {
  if (!j.is_object() || j.value("version", 0) != 1)
    throw make_error("SchemaError", "unsupported manifest version");
  RunManifest m;
  m.command = j.at("command").get<std::string>();
  m.argv = j.at("argv").get<std::vector<std::string>>();
  m.tool_version = j.at("tool_version").get<std::string>();
  m.timestamp = j.at("timestamp").get<std::string>();
  m.seeds = j.at("seeds");
  auto entries = [](const nlohmann::json &arr) {
    std::vector<RunManifest::Entry> v;
    for (const auto &e : arr)
      v.push_back({e.at("path").get<std::string>(), e.at("fingerprint").get<std::string>()});
    return v;
  };
  m.inputs = entries(j.at("inputs"));
  m.outputs = entries(j.at("outputs"));
  return m;
}

void write_manifest(const RunManifest &m, const std::string &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw make_error("IoError", "cannot open " + path + " for writing");
  out << manifest_to_json(m).dump(2, ' ', false,
                                  nlohmann::json::error_handler_t::replace)
      << '\n';
  if (!out) throw make_error("IoError", "failed writing " + path);
}

RunManifest load_manifest(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw make_error("IoError", "cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception &e) {
    throw make_error("SchemaError", std::string("invalid manifest: ") + e.what());
  }
  return manifest_from_json(j);
}

}  // namespace cashtag::manifest
