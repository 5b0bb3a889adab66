#include "subsetminer/manifest.hpp"

#include <algorithm>

#include "subsetminer/errors.hpp"
#include "subsetminer/util.hpp"

namespace subsetminer {

std::string RunManifest::serialize() const {
  nlohmann::ordered_json doc;
  doc["format_version"] = 1;
  doc["tool_version"] = kToolVersion;
  doc["command"] = command;
  doc["config"] = config;
  nlohmann::ordered_json digests = nlohmann::ordered_json::object();
  for (const auto& [label, entry] : input_digests) {
    nlohmann::ordered_json item;
    item["path"] = entry.first;
    item["sha256"] = entry.second;
    digests[label] = std::move(item);
  }
  doc["input_digests"] = std::move(digests);
  return doc.dump(2) + "\n";
}

std::string digest_file(const std::filesystem::path& path) {
  return sha256_hex(read_file(path));
}

std::string digest_tree(const std::filesystem::path& root) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(root, ec)) return digest_file(root);
  std::vector<std::string> rel_paths;
  for (auto it = fs::recursive_directory_iterator(root, ec);
       it != fs::recursive_directory_iterator(); it.increment(ec)) {
    if (ec) throw IoError("walk failed under " + root.string());
    if (it->is_regular_file())
      rel_paths.push_back(it->path().lexically_relative(root).generic_string());
  }
  std::sort(rel_paths.begin(), rel_paths.end());
  Sha256 hash;
  for (const std::string& rel : rel_paths) {
    hash.update(rel);
    hash.update(std::string_view("\0", 1));
    hash.update(read_file(root / rel));
  }
  return hash.hex_digest();
}

void write_manifest_beside(const std::filesystem::path& output,
                           const RunManifest& manifest) {
  std::filesystem::path path = output;
  path += ".manifest.json";
  atomic_write(path, manifest.serialize());
}

}  // namespace subsetminer
