#include "zip_archive.h"

#include <zlib.h>

#include <cstdint>
#include <cstring>

#include "melograph/error.h"
#include "xml_tree.h"

namespace melograph::detail {
namespace {

constexpr std::uint32_t kLocalHeaderSig = 0x04034b50;
constexpr std::uint32_t kCentralHeaderSig = 0x02014b50;
constexpr std::uint32_t kEndOfDirectorySig = 0x06054b50;
constexpr std::size_t kEndOfDirectorySize = 22;

std::uint16_t u16(std::string_view b, std::size_t at) {
  if (at + 2 > b.size()) throw ParseError("truncated ZIP structure", at);
  return static_cast<std::uint16_t>(static_cast<unsigned char>(b[at]) |
                                    (static_cast<unsigned char>(b[at + 1]) << 8));
}

std::uint32_t u32(std::string_view b, std::size_t at) {
  return static_cast<std::uint32_t>(u16(b, at)) | (static_cast<std::uint32_t>(u16(b, at + 2)) << 16);
}

std::string inflate_raw(std::string_view compressed, std::size_t expected, std::size_t offset) {
  std::string out(expected, '\0');
  z_stream stream{};
  if (inflateInit2(&stream, -MAX_WBITS) != Z_OK) throw Error("zlib initialisation failed");
  stream.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(compressed.data()));
  stream.avail_in = static_cast<uInt>(compressed.size());
  stream.next_out = reinterpret_cast<Bytef*>(out.data());
  stream.avail_out = static_cast<uInt>(out.size());
  const int rc = inflate(&stream, Z_FINISH);
  const auto produced = stream.total_out;
  inflateEnd(&stream);
  if (rc != Z_STREAM_END || produced != expected) throw ParseError("corrupt deflate stream in ZIP member", offset);
  return out;
}

}  // namespace

bool looks_like_zip(std::string_view bytes) noexcept {
  return bytes.size() >= 4 && bytes[0] == 'P' && bytes[1] == 'K' && bytes[2] == '\x03' && bytes[3] == '\x04';
}

ZipArchive::ZipArchive(std::string_view bytes) : bytes_(bytes) {
  if (bytes.size() < kEndOfDirectorySize) throw ParseError("ZIP archive too short", bytes.size());
  // The end-of-directory record sits within the last 64 KiB + 22 bytes.
  std::size_t eocd = std::string_view::npos;
  const std::size_t lowest = bytes.size() > 0xFFFF + kEndOfDirectorySize ? bytes.size() - 0xFFFF - kEndOfDirectorySize : 0;
  for (std::size_t at = bytes.size() - kEndOfDirectorySize + 1; at-- > lowest;) {
    if (u32(bytes, at) == kEndOfDirectorySig) {
      eocd = at;
      break;
    }
  }
  if (eocd == std::string_view::npos) throw ParseError("ZIP end-of-directory record not found", bytes.size());

  const std::uint16_t count = u16(bytes, eocd + 10);
  std::size_t at = u32(bytes, eocd + 16);
  for (std::uint16_t i = 0; i < count; ++i) {
    if (u32(bytes, at) != kCentralHeaderSig) throw ParseError("bad ZIP central directory entry", at);
    Entry entry;
    entry.method = u16(bytes, at + 10);
    entry.compressed_size = u32(bytes, at + 20);
    entry.uncompressed_size = u32(bytes, at + 24);
    const std::uint16_t name_len = u16(bytes, at + 28);
    const std::uint16_t extra_len = u16(bytes, at + 30);
    const std::uint16_t comment_len = u16(bytes, at + 32);
    entry.local_header_offset = u32(bytes, at + 42);
    if (at + 46 + name_len > bytes.size()) throw ParseError("truncated ZIP entry name", at);
    entry.name.assign(bytes.substr(at + 46, name_len));
    entries_.push_back(std::move(entry));
    at += 46u + name_len + extra_len + comment_len;
  }
}

std::vector<std::string> ZipArchive::names() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const Entry& e : entries_) out.push_back(e.name);
  return out;
}

std::optional<std::string> ZipArchive::read(std::string_view name) const {
  for (const Entry& e : entries_) {
    if (e.name != name) continue;
    const std::size_t at = e.local_header_offset;
    if (u32(bytes_, at) != kLocalHeaderSig) throw ParseError("bad ZIP local header", at);
    const std::size_t data = at + 30u + u16(bytes_, at + 26) + u16(bytes_, at + 28);
    if (data + e.compressed_size > bytes_.size()) throw ParseError("truncated ZIP member data", data);
    const std::string_view payload = bytes_.substr(data, e.compressed_size);
    if (e.method == 0) return std::string(payload);
    if (e.method == 8) return inflate_raw(payload, e.uncompressed_size, data);
    throw UnsupportedFormatError("ZIP compression method " + std::to_string(e.method) + " is not supported");
  }
  return std::nullopt;
}

std::string extract_mxl_root(std::string_view bytes) {
  const ZipArchive archive(bytes);
  const auto container = archive.read("META-INF/container.xml");
  if (!container) throw StructureError("compressed MusicXML lacks META-INF/container.xml");
  const auto tree = parse_xml(*container);
  std::string root_path;
  if (const XmlElement* rootfiles = tree->child("rootfiles")) {
    for (const auto& rootfile : rootfiles->children) {
      if (rootfile->name != "rootfile") continue;
      const std::string_view media = rootfile->attribute("media-type");
      if (media.empty() || media == "application/vnd.recordare.musicxml+xml") {
        root_path = std::string(rootfile->attribute("full-path"));
        break;
      }
    }
  }
  if (root_path.empty()) throw StructureError("container.xml names no MusicXML root file");
  auto root = archive.read(root_path);
  if (!root) throw StructureError("container root file '" + root_path + "' missing from archive");
  return std::move(*root);
}

}  // namespace melograph::detail
