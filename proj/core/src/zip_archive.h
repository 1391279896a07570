// Read-only access to the members of a ZIP archive held in memory.

#ifndef MELOGRAPH_SRC_ZIP_ARCHIVE_H_
#define MELOGRAPH_SRC_ZIP_ARCHIVE_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace melograph::detail {

bool looks_like_zip(std::string_view bytes) noexcept;

class ZipArchive {
 public:
  /// Indexes the central directory. Throws ParseError on a damaged archive.
  explicit ZipArchive(std::string_view bytes);

  std::vector<std::string> names() const;

  /// Decompressed member contents, or nullopt if absent. Supports stored and
  /// deflated members.
  std::optional<std::string> read(std::string_view name) const;

 private:
  struct Entry {
    std::string name;
    std::uint16_t method = 0;
    std::uint32_t compressed_size = 0;
    std::uint32_t uncompressed_size = 0;
    std::uint32_t local_header_offset = 0;
  };

  std::string_view bytes_;
  std::vector<Entry> entries_;
};

/// Resolves the root score of a MusicXML container via META-INF/container.xml
/// and returns its bytes.
std::string extract_mxl_root(std::string_view bytes);

}  // namespace melograph::detail

#endif  // MELOGRAPH_SRC_ZIP_ARCHIVE_H_
