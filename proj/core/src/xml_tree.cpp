#include "xml_tree.h"

#include <expat.h>

#include <limits>

#include "melograph/error.h"

namespace melograph::detail {
namespace {

struct BuildState {
  std::unique_ptr<XmlElement> root;
  std::vector<XmlElement*> stack;
};

void XMLCALL on_start(void* user_data, const XML_Char* name, const XML_Char** attrs) {
  auto* state = static_cast<BuildState*>(user_data);
  auto element = std::make_unique<XmlElement>();
  element->name = name;
  for (int i = 0; attrs[i] != nullptr; i += 2) element->attributes.emplace_back(attrs[i], attrs[i + 1]);
  XmlElement* raw = element.get();
  if (state->stack.empty()) {
    state->root = std::move(element);
  } else {
    state->stack.back()->children.push_back(std::move(element));
  }
  state->stack.push_back(raw);
}

void XMLCALL on_end(void* user_data, const XML_Char* /*name*/) {
  static_cast<BuildState*>(user_data)->stack.pop_back();
}

void XMLCALL on_text(void* user_data, const XML_Char* text, int len) {
  auto* state = static_cast<BuildState*>(user_data);
  if (!state->stack.empty()) state->stack.back()->text.append(text, static_cast<std::size_t>(len));
}

struct ParserDeleter {
  void operator()(XML_ParserStruct* parser) const { XML_ParserFree(parser); }
};

}  // namespace

const XmlElement* XmlElement::child(std::string_view child_name) const {
  for (const auto& c : children) {
    if (c->name == child_name) return c.get();
  }
  return nullptr;
}

std::string_view XmlElement::child_text(std::string_view child_name) const {
  const XmlElement* c = child(child_name);
  return c ? std::string_view(c->text) : std::string_view();
}

std::string_view XmlElement::attribute(std::string_view attr_name) const {
  for (const auto& [key, value] : attributes) {
    if (key == attr_name) return value;
  }
  return {};
}

std::unique_ptr<XmlElement> parse_xml(std::string_view bytes) {
  if (bytes.size() > static_cast<std::size_t>(std::numeric_limits<int>::max())) {
    throw ParseError("XML payload too large", 0);
  }
  std::unique_ptr<XML_ParserStruct, ParserDeleter> parser(XML_ParserCreate("UTF-8"));
  if (!parser) throw Error("cannot allocate XML parser");

  BuildState state;
  XML_SetUserData(parser.get(), &state);
  XML_SetElementHandler(parser.get(), on_start, on_end);
  XML_SetCharacterDataHandler(parser.get(), on_text);

  if (XML_Parse(parser.get(), bytes.data(), static_cast<int>(bytes.size()), XML_TRUE) == XML_STATUS_ERROR) {
    const auto offset = XML_GetCurrentByteIndex(parser.get());
    throw ParseError(std::string("malformed XML: ") + XML_ErrorString(XML_GetErrorCode(parser.get())) +
                         " at line " + std::to_string(XML_GetCurrentLineNumber(parser.get())),
                     offset < 0 ? 0 : static_cast<std::size_t>(offset));
  }
  if (!state.root) throw ParseError("document has no root element", bytes.size());
  return std::move(state.root);
}

}  // namespace melograph::detail
