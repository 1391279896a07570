#include "melograph/pipeline.h"

namespace melograph {

ScoreDocument prepare_document(const RawScoreFile& file, const RunConfig& config) {
  ScoreDocument doc = assign_part_roles(parse_musicxml(file), config.voice_part_override);
  if (config.merge_ties) doc = merge_ties(std::move(doc));
  return doc;
}

VariantReport analyze_graph(const ScoreGraph& graph, const RunConfig& config) {
  VariantReport report;
  report.source_path = graph.score_id;
  report.graph_summary = melody_lyrics_summary(graph);
  report.bigrams = bigram_contour_counts(graph);
  report.pitch_duration = pitch_duration_matrix(graph, config.bands, config.include_extensions);
  report.vowel_transitions = vowel_transition_matrix(graph, config.min_transition_count);
  report.vowel_samples = vowel_duration_samples(graph);
  report.vowel_stats = vowel_duration_stats(report.vowel_samples);
  return report;
}

VariantReport analyze_score(const RawScoreFile& file, const RunConfig& config, std::string variant_id) {
  config.validate();
  const ScoreDocument doc = prepare_document(file, config);
  const ScoreGraph graph = build_graph(doc, config.graph_config());
  VariantReport report = analyze_graph(graph, config);
  report.variant_id = std::move(variant_id);
  report.parse_report = doc.report;
  return report;
}

}  // namespace melograph
