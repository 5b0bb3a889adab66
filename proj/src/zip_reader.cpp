#include "subsetminer/zip_reader.hpp"

#include <zlib.h>

#include <cstring>

#include "subsetminer/errors.hpp"
#include "subsetminer/util.hpp"

namespace subsetminer {

namespace {

constexpr std::uint32_t kLocalHeaderSig = 0x04034b50;
constexpr std::uint32_t kCentralDirSig = 0x02014b50;
constexpr std::uint32_t kEndOfCentralDirSig = 0x06054b50;

std::uint16_t read_u16(const std::string& d, std::size_t off) {
  return static_cast<std::uint16_t>(static_cast<unsigned char>(d[off]) |
                                    (static_cast<unsigned char>(d[off + 1]) << 8));
}

std::uint32_t read_u32(const std::string& d, std::size_t off) {
  return static_cast<std::uint32_t>(static_cast<unsigned char>(d[off])) |
         (static_cast<std::uint32_t>(static_cast<unsigned char>(d[off + 1])) << 8) |
         (static_cast<std::uint32_t>(static_cast<unsigned char>(d[off + 2])) << 16) |
         (static_cast<std::uint32_t>(static_cast<unsigned char>(d[off + 3])) << 24);
}

std::string inflate_raw(const char* src, std::size_t src_len,
                        std::size_t dst_len) {
  std::string out(dst_len, '\0');
  z_stream zs;
  std::memset(&zs, 0, sizeof(zs));
  // negative window bits: raw deflate stream, as stored in zip entries
  if (inflateInit2(&zs, -15) != Z_OK) throw IoError("inflate init failed");
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(src));
  zs.avail_in = static_cast<uInt>(src_len);
  zs.next_out = reinterpret_cast<Bytef*>(out.data());
  zs.avail_out = static_cast<uInt>(dst_len);
  const int rc = inflate(&zs, Z_FINISH);
  inflateEnd(&zs);
  if (rc != Z_STREAM_END || zs.total_out != dst_len)
    throw ParseError("zip entry failed to decompress");
  return out;
}

}  // namespace

ZipReader::ZipReader(const std::filesystem::path& path)
    : data_(read_file(path)) {
  if (data_.size() < 22) throw ParseError(path.string() + ": not a zip archive");

  // End-of-central-directory record: scan backwards over a possible comment.
  std::size_t eocd = std::string::npos;
  const std::size_t scan_start =
      data_.size() >= 22 + 65535 ? data_.size() - 22 - 65535 : 0;
  for (std::size_t i = data_.size() - 22 + 1; i-- > scan_start;) {
    if (read_u32(data_, i) == kEndOfCentralDirSig) {
      eocd = i;
      break;
    }
  }
  if (eocd == std::string::npos)
    throw ParseError(path.string() + ": zip end-of-central-directory not found");

  const std::uint16_t entry_count = read_u16(data_, eocd + 10);
  const std::uint32_t cd_size = read_u32(data_, eocd + 12);
  const std::uint32_t cd_offset = read_u32(data_, eocd + 16);
  if (entry_count == 0xFFFF || cd_offset == 0xFFFFFFFF)
    throw ParseError(path.string() + ": zip64 archives are not supported");
  if (static_cast<std::size_t>(cd_offset) + cd_size > data_.size())
    throw ParseError(path.string() + ": zip central directory out of bounds");

  std::size_t pos = cd_offset;
  entries_.reserve(entry_count);
  for (std::uint16_t i = 0; i < entry_count; ++i) {
    if (pos + 46 > data_.size() || read_u32(data_, pos) != kCentralDirSig)
      throw ParseError(path.string() + ": corrupt zip central directory");
    Entry e;
    const std::uint16_t flags = read_u16(data_, pos + 8);
    e.method = read_u16(data_, pos + 10);
    e.crc32 = read_u32(data_, pos + 16);
    e.compressed_size = read_u32(data_, pos + 20);
    e.uncompressed_size = read_u32(data_, pos + 24);
    const std::uint16_t name_len = read_u16(data_, pos + 28);
    const std::uint16_t extra_len = read_u16(data_, pos + 30);
    const std::uint16_t comment_len = read_u16(data_, pos + 32);
    e.local_header_offset = read_u32(data_, pos + 42);
    if (pos + 46 + name_len > data_.size())
      throw ParseError(path.string() + ": corrupt zip entry name");
    e.name = data_.substr(pos + 46, name_len);
    pos += 46 + name_len + extra_len + comment_len;
    if (e.name.empty() || e.name.back() == '/') continue;  // directory entry
    if (flags & 0x1)
      throw ParseError(path.string() + ": encrypted zip entries are not supported");
    if (e.compressed_size == 0xFFFFFFFF || e.uncompressed_size == 0xFFFFFFFF ||
        e.local_header_offset == 0xFFFFFFFF)
      throw ParseError(path.string() + ": zip64 entries are not supported");
    names_.push_back(e.name);
    entries_.push_back(std::move(e));
  }
}

const ZipReader::Entry& ZipReader::find(const std::string& name) const {
  for (const Entry& e : entries_)
    if (e.name == name) return e;
  throw IoError("zip entry not found: " + name);
}

std::string ZipReader::read(const std::string& name) const {
  const Entry& e = find(name);
  std::size_t pos = e.local_header_offset;
  if (pos + 30 > data_.size() || read_u32(data_, pos) != kLocalHeaderSig)
    throw ParseError("corrupt zip local header for " + name);
  const std::uint16_t name_len = read_u16(data_, pos + 26);
  const std::uint16_t extra_len = read_u16(data_, pos + 28);
  pos += 30 + name_len + extra_len;
  if (pos + e.compressed_size > data_.size())
    throw ParseError("zip entry data out of bounds for " + name);

  std::string content;
  if (e.method == 0) {
    if (e.compressed_size != e.uncompressed_size)
      throw ParseError("stored zip entry with mismatched sizes: " + name);
    content = data_.substr(pos, e.compressed_size);
  } else if (e.method == 8) {
    content = inflate_raw(data_.data() + pos, e.compressed_size,
                          e.uncompressed_size);
  } else {
    throw ParseError("unsupported zip compression method for " + name);
  }
  const auto crc = crc32(0L, reinterpret_cast<const Bytef*>(content.data()),
                         static_cast<uInt>(content.size()));
  if (static_cast<std::uint32_t>(crc) != e.crc32)
    throw ParseError("zip CRC mismatch for " + name);
  return content;
}

}  // namespace subsetminer
