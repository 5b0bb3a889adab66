#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace subsetminer {

inline constexpr const char* kToolVersion = "0.1.0";

// Reproducibility envelope written beside each output file: the subcommand,
// its fully resolved parameters (defaults and seed included), and content
// hashes of every input. An identical manifest implies identical outputs.
struct RunManifest {
  std::string command;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  // (label, {path, sha256}) in insertion order
  std::vector<std::pair<std::string, std::pair<std::string, std::string>>>
      input_digests;

  void add_input(const std::string& label, const std::filesystem::path& path,
                 const std::string& digest) {
    input_digests.push_back({label, {path.generic_string(), digest}});
  }

  std::string serialize() const;
};

std::string digest_file(const std::filesystem::path& path);

// Digest of a directory tree: sha256 over (relative path, NUL, content) of
// every regular file in lexicographic path order.
std::string digest_tree(const std::filesystem::path& root);

// Writes <output>.manifest.json next to the output file.
void write_manifest_beside(const std::filesystem::path& output,
                           const RunManifest& manifest);

}  // namespace subsetminer
