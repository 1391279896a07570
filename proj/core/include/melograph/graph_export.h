// DOT, GraphML and JSON serialisations of a ScoreGraph, plus the tonal
// function sidecar reader.

#ifndef MELOGRAPH_GRAPH_EXPORT_H_
#define MELOGRAPH_GRAPH_EXPORT_H_

#include <map>
#include <string>
#include <string_view>

#include "melograph/score_graph.h"

namespace melograph {

enum class ExportFormat { dot, graphml, json };

/// Throws UsageError for anything other than "dot", "graphml" or "json".
ExportFormat parse_export_format(std::string_view name);

/// Nodes ordered by kind then index, edges by (src, dst, kind). Output is a
/// pure function of the graph.
std::string export_graph(const ScoreGraph& graph, ExportFormat format);

/// Parses a sidecar JSON object {"node id": "label", ...}. Throws InputError
/// on malformed JSON or non-string values.
std::map<std::string, std::string> parse_annotations(std::string_view json_text);

/// Attaches tonal-function labels. Throws InputError for unknown node ids.
ScoreGraph annotate(ScoreGraph graph, const std::map<std::string, std::string>& labels);

}  // namespace melograph

#endif  // MELOGRAPH_GRAPH_EXPORT_H_
