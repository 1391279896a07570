// Minimal element tree built on expat. Internal to the MusicXML reader.

#ifndef MELOGRAPH_SRC_XML_TREE_H_
#define MELOGRAPH_SRC_XML_TREE_H_

#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace melograph::detail {

struct XmlElement {
  std::string name;
  std::vector<std::pair<std::string, std::string>> attributes;
  std::string text;  // concatenated character data of this element only
  std::vector<std::unique_ptr<XmlElement>> children;

  const XmlElement* child(std::string_view child_name) const;
  std::string_view child_text(std::string_view child_name) const;
  std::string_view attribute(std::string_view attr_name) const;
  bool has_child(std::string_view child_name) const { return child(child_name) != nullptr; }
};

/// Parses `bytes` into a tree. Throws ParseError (with byte offset) on
/// malformed input. The DOCTYPE's external subset is never fetched.
std::unique_ptr<XmlElement> parse_xml(std::string_view bytes);

}  // namespace melograph::detail

#endif  // MELOGRAPH_SRC_XML_TREE_H_
