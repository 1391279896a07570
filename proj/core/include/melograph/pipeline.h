// Single-score pipeline: parse → roles → ties → graph → analytics.

#ifndef MELOGRAPH_PIPELINE_H_
#define MELOGRAPH_PIPELINE_H_

#include <map>
#include <string>
#include <vector>

#include "melograph/boxplot.h"
#include "melograph/config.h"
#include "melograph/distribution.h"
#include "melograph/melotext.h"
#include "melograph/musicxml.h"
#include "melograph/score_graph.h"

namespace melograph {

struct VariantReport {
  std::string variant_id;
  std::string source_path;
  ParseReport parse_report;
  GraphSummary graph_summary;
  std::vector<BigramContourRecord> bigrams;  // all records, sorted
  DistributionMatrix pitch_duration;
  DistributionMatrix vowel_transitions;  // min_transition_count applied
  std::map<Vowel, std::vector<Rational>> vowel_samples;
  std::vector<BoxplotStats> vowel_stats;
};

/// Parses, assigns roles and (per config) merges ties.
ScoreDocument prepare_document(const RawScoreFile& file, const RunConfig& config);

/// Runs every analytic on one file.
VariantReport analyze_score(const RawScoreFile& file, const RunConfig& config, std::string variant_id);

/// Same analytics on an already built graph.
VariantReport analyze_graph(const ScoreGraph& graph, const RunConfig& config);

}  // namespace melograph

#endif  // MELOGRAPH_PIPELINE_H_
