// Melodic-textual distributions read off a built ScoreGraph.

#ifndef MELOGRAPH_MELOTEXT_H_
#define MELOGRAPH_MELOTEXT_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "melograph/bands.h"
#include "melograph/boxplot.h"
#include "melograph/distribution.h"
#include "melograph/pitch.h"
#include "melograph/score_graph.h"
#include "melograph/vowel.h"

namespace melograph {

struct BigramContourRecord {
  std::string first;
  std::string second;
  ContourClass contour = ContourClass::same;
  std::int64_t count = 0;

  friend bool operator==(const BigramContourRecord&, const BigramContourRecord&) = default;
};

/// Orders by descending count, then (first, second, contour) ascending.
void sort_bigram_records(std::vector<BigramContourRecord>& records);

/// Every (syllable pair, contour) along next_syllable, with counts. The
/// contour joins the head notes of the two syllables. Syllable text is
/// lower-cased. Sorted with sort_bigram_records.
std::vector<BigramContourRecord> bigram_contour_counts(const ScoreGraph& graph);

/// The `top_k` most frequent records of bigram_contour_counts.
std::vector<BigramContourRecord> syllabic_bigram_contours(const ScoreGraph& graph, std::size_t top_k = 15);

/// Rows low/mid/high, columns short/medium/long. One count per melisma head;
/// `include_extensions` also bins the melisma's extension notes.
DistributionMatrix pitch_duration_matrix(const ScoreGraph& graph, const BandThresholds& bands = {},
                                         bool include_extensions = false);

/// Per syllable, the summed duration of every note sung on it, grouped by
/// principal vowel. Every vowel class has an entry, possibly empty.
std::map<Vowel, std::vector<Rational>> vowel_duration_samples(const ScoreGraph& graph);

/// Boxplot per vowel class in canonical order (a e i o u io ia
/// consonant_only); absent classes have n = 0.
std::vector<BoxplotStats> vowel_duration_stats(const ScoreGraph& graph);
std::vector<BoxplotStats> vowel_duration_stats(const std::map<Vowel, std::vector<Rational>>& samples);

/// Principal vowel of each syllable against that of its successor. Rows and
/// columns list the observed classes in canonical order. With min_count > 0,
/// cells below it are zeroed.
DistributionMatrix vowel_transition_matrix(const ScoreGraph& graph, std::int64_t min_count = 0);

/// Zeroes every cell below `min_count` (no-op for min_count ≤ 0).
void apply_min_count(DistributionMatrix& matrix, std::int64_t min_count);

std::string bigrams_to_csv(const std::vector<BigramContourRecord>& records);
std::string boxplots_to_csv(const std::vector<BoxplotStats>& stats);

}  // namespace melograph

#endif  // MELOGRAPH_MELOTEXT_H_
