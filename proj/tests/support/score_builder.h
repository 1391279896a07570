// Test-side builders: in-memory scores without going through MusicXML, and
// seeded random generators for the property suites.
#ifndef MELOGRAPH_TESTS_SCORE_BUILDER_H_
#define MELOGRAPH_TESTS_SCORE_BUILDER_H_

#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "melograph/distribution.h"
#include "melograph/rational.h"
#include "melograph/score.h"

namespace melograph::testing {

std::filesystem::path fixture(const std::string& relative);

Pitch pitch_from_midi(int midi);

NoteEvent sung(int midi, Rational onset, Rational duration, std::optional<std::string> lyric = {});
NoteEvent accompaniment(int midi, Rational onset, Rational duration, bool chord = false);

/// Sequential sung notes starting at 0; an empty lyric string means "no lyric".
std::vector<NoteEvent> melody(const std::vector<int>& midis, const std::vector<Rational>& durations,
                              const std::vector<std::string>& lyrics);

/// Voice part P1 and (if non-empty) piano part P2, one measure each that
/// spans the content. Roles are set.
ScoreDocument make_document(std::vector<NoteEvent> voice, std::vector<NoteEvent> piano = {});

int uniform(std::mt19937_64& rng, int lo, int hi);

struct RandomScore {
  ScoreDocument doc;
  int notes = 0;
  int syllables = 0;
  std::vector<int> melisma_sizes;  // notes per syllable, in order
};

/// n sung notes carrying m syllables (1 ≤ m ≤ n); the first note always
/// carries a lyric so every note belongs to a melisma.
RandomScore random_voice_score(std::mt19937_64& rng, int n, int m);

/// Random rational in (0, 8] with denominator from {1,2,3,4,8,16}.
Rational random_duration(std::mt19937_64& rng);

DistributionMatrix random_matrix(std::mt19937_64& rng, const std::string& name, std::vector<std::string> rows,
                                 std::vector<std::string> cols, int max_count = 50);

}  // namespace melograph::testing

#endif  // MELOGRAPH_TESTS_SCORE_BUILDER_H_
