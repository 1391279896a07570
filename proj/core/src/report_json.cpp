#include "melograph/report_json.h"

#include "melograph/error.h"

namespace melograph {

using nlohmann::json;

namespace {

json rational_or_null(const std::optional<Rational>& value, int decimals) {
  return value ? json(std::stod(to_fixed(*value, decimals))) : json(nullptr);
}

}  // namespace

json to_json(const ArtifactMetadata& meta) { return {{"score_id", meta.score_id}, {"config_hash", meta.config_hash}}; }

json to_json(const ParseReport& report) {
  return {{"warnings", report.warnings},
          {"ignored_elements", report.ignored_elements},
          {"grace_notes", report.grace_notes},
          {"tuplet_notes", report.tuplet_notes},
          {"transposing_parts", report.transposing_parts},
          {"dropped_verses", report.dropped_verses},
          {"merged_ties", report.merged_ties},
          {"dangling_ties", report.dangling_ties},
          {"conservation_violations", report.conservation_violations}};
}

json to_json(const GraphSummary& s) {
  json histogram = json::object();
  for (const auto& [degree, count] : s.degree_histogram) histogram[std::to_string(degree)] = count;
  return {{"melody_nodes", s.melody_nodes},
          {"lyric_nodes", s.lyric_nodes},
          {"total_nodes", s.total_nodes},
          {"note_to_syllable_edges", s.note_to_syllable_edges},
          {"total_edges", s.total_edges},
          {"density", rational_or_null(s.density, 4)},
          {"density_exact", s.density ? json(s.density->to_string()) : json(nullptr)},
          {"density_defined", s.density.has_value()},
          {"avg_in_degree_notes", std::stod(to_fixed(s.avg_in_notes, 2))},
          {"avg_out_degree_notes", std::stod(to_fixed(s.avg_out_notes, 2))},
          {"avg_in_degree_syllables", std::stod(to_fixed(s.avg_in_syllables, 2))},
          {"avg_out_degree_syllables", std::stod(to_fixed(s.avg_out_syllables, 2))},
          {"avg_in_degree_notes_exact", s.avg_in_notes.to_string()},
          {"avg_out_degree_notes_exact", s.avg_out_notes.to_string()},
          {"avg_in_degree_syllables_exact", s.avg_in_syllables.to_string()},
          {"avg_out_degree_syllables_exact", s.avg_out_syllables.to_string()},
          {"max_degree", s.max_degree.degree},
          {"max_degree_node", s.max_degree.node_id},
          {"max_degree_label", s.max_degree.label},
          {"max_total_degree", s.max_total_degree.degree},
          {"max_total_degree_node", s.max_total_degree.node_id},
          {"min_degree", s.min_degree},
          {"degree_histogram", histogram},
          {"unassigned_notes", s.unassigned_notes}};
}

json to_json(const DistributionMatrix& m, const ArtifactMetadata& meta) {
  return {{"name", m.name},
          {"row_labels", m.row_labels},
          {"col_labels", m.col_labels},
          {"counts", m.counts},
          {"metadata", to_json(meta)}};
}

json to_json(const std::vector<BigramContourRecord>& records, const ArtifactMetadata& meta) {
  json rows = json::array();
  for (const auto& r : records) {
    rows.push_back({{"first", r.first}, {"second", r.second}, {"contour", to_string(r.contour)}, {"count", r.count}});
  }
  return {{"name", "syllabic_bigram_contours"}, {"records", rows}, {"metadata", to_json(meta)}};
}

json to_json(const std::vector<BoxplotStats>& stats, const ArtifactMetadata& meta) {
  json rows = json::array();
  for (const auto& s : stats) {
    json outliers = json::array();
    for (const Rational& o : s.outliers) outliers.push_back(std::stod(to_fixed(o, 4)));
    rows.push_back({{"vowel", s.label},
                    {"n", s.n},
                    {"median", rational_or_null(s.median, 4)},
                    {"q1", rational_or_null(s.q1, 4)},
                    {"q3", rational_or_null(s.q3, 4)},
                    {"iqr", rational_or_null(s.iqr, 4)},
                    {"whisker_low", rational_or_null(s.whisker_low, 4)},
                    {"whisker_high", rational_or_null(s.whisker_high, 4)},
                    {"median_exact", s.median ? json(s.median->to_string()) : json(nullptr)},
                    {"outliers", outliers}});
  }
  return {{"name", "vowel_durations"}, {"stats", rows}, {"metadata", to_json(meta)}};
}

json to_json(const VariantReport& report, const RunConfig& config) {
  const ArtifactMetadata meta{report.variant_id, config_hash(config)};
  std::vector<BigramContourRecord> top = report.bigrams;
  if (top.size() > static_cast<std::size_t>(config.top_k_bigrams)) top.resize(static_cast<std::size_t>(config.top_k_bigrams));
  return {{"variant_id", report.variant_id},
          {"source_path", report.source_path},
          {"config_hash", meta.config_hash},
          {"parse_report", to_json(report.parse_report)},
          {"graph_summary", to_json(report.graph_summary)},
          {"analytics",
           {{"bigrams", to_json(top, meta)},
            {"bands", to_json(report.pitch_duration, meta)},
            {"vowels", to_json(report.vowel_stats, meta)},
            {"transitions", to_json(report.vowel_transitions, meta)}}}};
}

json inspect_json(const ScoreDocument& doc) {
  json parts = json::array();
  for (const Part& part : doc.parts) {
    std::size_t notes = 0, rests = 0, lyrics = 0, chords = 0, grace = 0;
    for (const Measure& m : part.measures) {
      grace += m.grace_notes.size();
      for (const NoteEvent& e : m.events) {
        (e.is_rest() ? rests : notes) += 1;
        if (e.lyric) ++lyrics;
        if (e.chord) ++chords;
      }
    }
    parts.push_back({{"id", part.id},
                     {"name", part.name},
                     {"role", to_string(part.role)},
                     {"measures", part.measures.size()},
                     {"events", notes + rests},
                     {"notes", notes},
                     {"rests", rests},
                     {"chord_notes", chords},
                     {"grace_notes", grace},
                     {"lyrics", lyrics}});
  }
  return {{"source_path", doc.source_path},
          {"title", doc.title},
          {"parts", parts},
          {"divisions_map", doc.divisions_map()},
          {"report", to_json(doc.report)}};
}

DistributionMatrix matrix_from_json(const json& j) {
  try {
    DistributionMatrix m;
    m.name = j.at("name").get<std::string>();
    m.row_labels = j.at("row_labels").get<std::vector<std::string>>();
    m.col_labels = j.at("col_labels").get<std::vector<std::string>>();
    m.counts = j.at("counts").get<std::vector<std::vector<std::int64_t>>>();
    if (m.counts.size() != m.row_labels.size()) throw InputError("matrix row count does not match its labels");
    for (const auto& row : m.counts) {
      if (row.size() != m.col_labels.size()) throw InputError("matrix column count does not match its labels");
    }
    return m;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed matrix JSON: ") + e.what());
  }
}

}  // namespace melograph
