#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace subsetminer {

// Minimal read-only view of a .zip archive: stored and deflated entries,
// no zip64, no encryption. Enough to traverse downloaded repository
// snapshots without extracting them.
class ZipReader {
 public:
  explicit ZipReader(const std::filesystem::path& path);

  // Entry names in central-directory order; directories (trailing '/') are
  // omitted.
  const std::vector<std::string>& names() const { return names_; }

  // Decompresses one entry and verifies its CRC-32.
  std::string read(const std::string& name) const;

 private:
  struct Entry {
    std::string name;
    std::uint16_t method = 0;
    std::uint32_t compressed_size = 0;
    std::uint32_t uncompressed_size = 0;
    std::uint32_t crc32 = 0;
    std::uint32_t local_header_offset = 0;
  };

  std::string data_;
  std::vector<Entry> entries_;
  std::vector<std::string> names_;

  const Entry& find(const std::string& name) const;
};

}  // namespace subsetminer
