// Batch analysis of variant scores and cross-variant aggregation.

#ifndef MELOGRAPH_CORPUS_H_
#define MELOGRAPH_CORPUS_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "melograph/config.h"
#include "melograph/distribution.h"
#include "melograph/pipeline.h"

namespace melograph {

struct CorpusFailure {
  std::string path;
  std::string message;
};

struct CorpusAggregate {
  DistributionMatrix pitch_duration;
  DistributionMatrix vowel_transitions;
  std::vector<BigramContourRecord> bigrams;  // union of per-variant records
  std::vector<BoxplotStats> vowel_stats;     // pooled raw samples
};

struct CorpusReport {
  std::vector<VariantReport> variants;  // ordered by variant_id
  std::vector<CorpusFailure> failures;
  std::vector<std::string> subset;      // variant ids aggregated, ordered
  bool empty_subset = false;
  CorpusAggregate aggregated;
  RunConfig config;
};

/// Elementwise sum with labels aligned by name; missing labels count as
/// zero. Identical label lists are kept as-is. Otherwise the union is
/// ordered by `row_order`/`col_order` first and lexicographically after.
/// Throws AggregationError when names differ or a matrix repeats a label.
DistributionMatrix aggregate_matrices(std::span<const DistributionMatrix> matrices,
                                      std::span<const std::string> row_order = {},
                                      std::span<const std::string> col_order = {});

/// Sums counts per (pair, contour) key over the union of keys.
std::vector<BigramContourRecord> aggregate_bigrams(std::span<const std::vector<BigramContourRecord>> lists);

/// Maps file names to variant ids. Reads a JSON object {filename: id}.
std::map<std::string, std::string> load_manifest(const std::filesystem::path& path);

/// Files with extension .xml, .musicxml or .mxl directly inside `dir`,
/// sorted by name.
std::vector<std::filesystem::path> list_score_files(const std::filesystem::path& dir);

/// Analyses every file (in parallel) and aggregates over all successful
/// variants. A failing file becomes a CorpusFailure; if all fail, throws
/// CorpusError. Variant ids come from `manifest` or the file stem and must
/// be unique.
CorpusReport run_corpus(std::span<const std::filesystem::path> paths, const RunConfig& config,
                        const std::map<std::string, std::string>& manifest = {});

struct RandomSubset {
  std::size_t k = 0;
};
using SubsetSelector = std::variant<std::vector<std::string>, RandomSubset>;

/// Restricts aggregation to the selected variants. Random selection is a
/// partial Fisher–Yates shuffle of the sorted ids driven by mt19937_64(seed)
/// with rejection-sampled bounded draws, so results are reproducible across
/// platforms. Throws SelectionError for unknown ids or k beyond the corpus.
CorpusReport select_subset(CorpusReport corpus, const SubsetSelector& selector, std::uint64_t seed);

/// Recomputes `aggregated` from the variants listed in `subset`.
void recompute_aggregate(CorpusReport& corpus);

/// Writes variants/<id>.json, corpus.json and csv/*.csv under
/// <out_root>/run-<timestamp>-<config hash>. Returns the run directory.
std::filesystem::path write_run_directory(const CorpusReport& corpus, const std::filesystem::path& out_root,
                                          std::string_view timestamp);

}  // namespace melograph

#endif  // MELOGRAPH_CORPUS_H_
