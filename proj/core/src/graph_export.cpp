#include "melograph/graph_export.h"

#include <algorithm>
#include <nlohmann/json.hpp>
#include <sstream>
#include <tuple>

#include "melograph/error.h"

namespace melograph {
namespace {

using nlohmann::json;

// Node order: kind, then position within its kind.
std::vector<std::size_t> ordered_nodes(const ScoreGraph& graph) {
  std::vector<std::size_t> order;
  for (NodeKind kind : {NodeKind::note, NodeKind::syllable, NodeKind::piano}) {
    const auto& members = graph.nodes_of(kind);
    order.insert(order.end(), members.begin(), members.end());
  }
  return order;
}

std::vector<GraphEdge> ordered_edges(const ScoreGraph& graph) {
  std::vector<std::size_t> rank(graph.nodes().size());
  const auto order = ordered_nodes(graph);
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = i;
  std::vector<GraphEdge> edges = graph.edges();
  std::stable_sort(edges.begin(), edges.end(), [&rank](const GraphEdge& a, const GraphEdge& b) {
    return std::tuple(rank[a.src], rank[a.dst], static_cast<int>(a.kind)) <
           std::tuple(rank[b.src], rank[b.dst], static_cast<int>(b.kind));
  });
  return edges;
}

std::string dot_quote(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  out += '"';
  return out;
}

std::string xml_escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string export_dot(const ScoreGraph& graph) {
  std::ostringstream os;
  os << "digraph score {\n";
  for (std::size_t n : ordered_nodes(graph)) {
    const GraphNode& node = graph.node(n);
    os << "  " << dot_quote(node.id) << " [kind=" << dot_quote(to_string(node.kind))
       << ", label=" << dot_quote(node.label());
    if (const NoteEvent* e = node.event()) {
      os << ", onset=" << dot_quote(e->onset.to_string()) << ", duration=" << dot_quote(e->duration.to_string());
      if (node.kind == NodeKind::note) os << ", is_head=" << (node.is_head ? "true" : "false");
    }
    if (node.tonal_function) os << ", tonal_function=" << dot_quote(*node.tonal_function);
    os << "];\n";
  }
  for (const GraphEdge& e : ordered_edges(graph)) {
    os << "  " << dot_quote(graph.node(e.src).id) << " -> " << dot_quote(graph.node(e.dst).id)
       << " [kind=" << dot_quote(to_string(e.kind)) << "];\n";
  }
  os << "}\n";
  return os.str();
}

std::string export_graphml(const ScoreGraph& graph) {
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
     << "  <key id=\"kind\" for=\"node\" attr.name=\"kind\" attr.type=\"string\"/>\n"
     << "  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n"
     << "  <key id=\"midi\" for=\"node\" attr.name=\"midi\" attr.type=\"int\"/>\n"
     << "  <key id=\"onset\" for=\"node\" attr.name=\"onset\" attr.type=\"string\"/>\n"
     << "  <key id=\"duration\" for=\"node\" attr.name=\"duration\" attr.type=\"string\"/>\n"
     << "  <key id=\"metric_position\" for=\"node\" attr.name=\"metric_position\" attr.type=\"string\"/>\n"
     << "  <key id=\"is_head\" for=\"node\" attr.name=\"is_head\" attr.type=\"boolean\"/>\n"
     << "  <key id=\"vowel\" for=\"node\" attr.name=\"vowel\" attr.type=\"string\"/>\n"
     << "  <key id=\"tonal_function\" for=\"node\" attr.name=\"tonal_function\" attr.type=\"string\"/>\n"
     << "  <key id=\"edge_kind\" for=\"edge\" attr.name=\"kind\" attr.type=\"string\"/>\n"
     << "  <graph id=\"score\" edgedefault=\"directed\">\n";
  for (std::size_t n : ordered_nodes(graph)) {
    const GraphNode& node = graph.node(n);
    os << "    <node id=\"" << xml_escape(node.id) << "\">\n"
       << "      <data key=\"kind\">" << to_string(node.kind) << "</data>\n"
       << "      <data key=\"label\">" << xml_escape(node.label()) << "</data>\n";
    if (const NoteEvent* e = node.event()) {
      if (e->pitch) os << "      <data key=\"midi\">" << midi_number(*e->pitch) << "</data>\n";
      os << "      <data key=\"onset\">" << e->onset << "</data>\n"
         << "      <data key=\"duration\">" << e->duration << "</data>\n"
         << "      <data key=\"metric_position\">" << e->metric_position << "</data>\n";
      if (node.kind == NodeKind::note) {
        os << "      <data key=\"is_head\">" << (node.is_head ? "true" : "false") << "</data>\n";
      }
    }
    if (const SyllableUnit* s = node.syllable()) {
      os << "      <data key=\"vowel\">" << to_string(s->principal_vowel) << "</data>\n";
    }
    if (node.tonal_function) {
      os << "      <data key=\"tonal_function\">" << xml_escape(*node.tonal_function) << "</data>\n";
    }
    os << "    </node>\n";
  }
  std::size_t edge_id = 0;
  for (const GraphEdge& e : ordered_edges(graph)) {
    os << "    <edge id=\"e" << edge_id++ << "\" source=\"" << xml_escape(graph.node(e.src).id) << "\" target=\""
       << xml_escape(graph.node(e.dst).id) << "\">\n"
       << "      <data key=\"edge_kind\">" << to_string(e.kind) << "</data>\n"
       << "    </edge>\n";
  }
  os << "  </graph>\n</graphml>\n";
  return os.str();
}

std::string export_json(const ScoreGraph& graph) {
  json nodes = json::array();
  for (std::size_t n : ordered_nodes(graph)) {
    const GraphNode& node = graph.node(n);
    json entry = {{"id", node.id}, {"kind", to_string(node.kind)}, {"label", node.label()}};
    if (const NoteEvent* e = node.event()) {
      if (e->pitch) entry["midi"] = midi_number(*e->pitch);
      entry["onset"] = e->onset.to_string();
      entry["duration"] = e->duration.to_string();
      entry["metric_position"] = e->metric_position.to_string();
      entry["measure"] = e->measure_index;
      if (node.kind == NodeKind::note) entry["is_head"] = node.is_head;
    }
    if (const SyllableUnit* s = node.syllable()) {
      entry["vowel"] = to_string(s->principal_vowel);
      entry["sequence_index"] = s->sequence_index;
      entry["is_melismatic"] = s->is_melismatic;
    }
    if (node.tonal_function) entry["tonal_function"] = *node.tonal_function;
    nodes.push_back(std::move(entry));
  }
  json edges = json::array();
  for (const GraphEdge& e : ordered_edges(graph)) {
    edges.push_back({{"src", graph.node(e.src).id}, {"dst", graph.node(e.dst).id}, {"kind", to_string(e.kind)}});
  }
  json doc = {{"score_id", graph.score_id}, {"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
  return doc.dump(2) + "\n";
}

}  // namespace

ExportFormat parse_export_format(std::string_view name) {
  if (name == "dot") return ExportFormat::dot;
  if (name == "graphml") return ExportFormat::graphml;
  if (name == "json") return ExportFormat::json;
  throw UsageError("unknown export format '" + std::string(name) + "' (expected dot, graphml or json)");
}

std::string export_graph(const ScoreGraph& graph, ExportFormat format) {
  switch (format) {
    case ExportFormat::dot: return export_dot(graph);
    case ExportFormat::graphml: return export_graphml(graph);
    case ExportFormat::json: return export_json(graph);
  }
  return {};
}

std::map<std::string, std::string> parse_annotations(std::string_view json_text) {
  json parsed;
  try {
    parsed = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("annotation file is not valid JSON: ") + e.what());
  }
  if (!parsed.is_object()) throw InputError("annotation file must hold a JSON object");
  std::map<std::string, std::string> labels;
  for (const auto& [id, value] : parsed.items()) {
    if (!value.is_string()) throw InputError("annotation for node " + id + " is not a string");
    labels[id] = value.get<std::string>();
  }
  return labels;
}

ScoreGraph annotate(ScoreGraph graph, const std::map<std::string, std::string>& labels) {
  for (const auto& [id, label] : labels) {
    const auto index = graph.find(id);
    if (!index) throw InputError("annotation names unknown node '" + id + "'");
    graph.set_tonal_function(*index, label);
  }
  return graph;
}

}  // namespace melograph
