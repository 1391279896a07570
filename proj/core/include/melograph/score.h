// In-memory model of a parsed partwise score.

#ifndef MELOGRAPH_SCORE_H_
#define MELOGRAPH_SCORE_H_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "melograph/pitch.h"
#include "melograph/rational.h"

namespace melograph {

enum class Syllabic { single, begin, middle, end };

std::string_view to_string(Syllabic syllabic) noexcept;

struct LyricAttachment {
  std::string text;  // never empty
  Syllabic syllabic = Syllabic::single;
  int verse = 1;

  friend bool operator==(const LyricAttachment&, const LyricAttachment&) = default;
};

/// One sounding (or silent) event. Times are in quarter notes: `onset` is
/// absolute from the start of the part, `metric_position` is the onset within
/// the measure divided by the measure length.
struct NoteEvent {
  Rational onset;
  Rational duration;
  std::optional<Pitch> pitch;  // empty for rests
  int voice = 1;
  int staff = 1;
  std::optional<LyricAttachment> lyric;
  int measure_index = 0;
  Rational metric_position;
  bool chord = false;  // shares the onset of the preceding note
  bool tie_start = false;
  bool tie_stop = false;
  bool grace = false;
  bool tuplet = false;

  bool is_rest() const noexcept { return !pitch.has_value(); }
  Rational end() const { return onset + duration; }

  friend bool operator==(const NoteEvent&, const NoteEvent&) = default;
};

struct Measure {
  int index = 0;
  std::string number;  // the MusicXML measure number attribute
  Rational start;      // absolute onset of the measure
  Rational length;     // quarter notes
  int divisions = 0;   // divisions per quarter in force at the end of the measure
  std::vector<NoteEvent> events;       // sorted by (onset, voice); durations > 0
  std::vector<NoteEvent> grace_notes;  // zero-duration ornaments, kept out of analysis

  friend bool operator==(const Measure&, const Measure&) = default;
};

enum class PartRole { voice, piano };

std::string_view to_string(PartRole role) noexcept;

struct Part {
  std::string id;
  std::string name;
  PartRole role = PartRole::piano;
  std::vector<Measure> measures;

  std::size_t lyric_count() const;

  friend bool operator==(const Part&, const Part&) = default;
};

/// Counters and warnings collected while reading a file.
struct ParseReport {
  std::vector<std::string> warnings;
  std::map<std::string, int> ignored_elements;
  int grace_notes = 0;
  int tuplet_notes = 0;
  int transposing_parts = 0;
  int dropped_verses = 0;
  int merged_ties = 0;
  int dangling_ties = 0;
  int conservation_violations = 0;

  friend bool operator==(const ParseReport&, const ParseReport&) = default;
};

struct ScoreDocument {
  std::string title;
  std::string source_path;
  std::vector<Part> parts;
  ParseReport report;

  /// Divisions per quarter note of each measure of the first part.
  std::vector<int> divisions_map() const;

  const Part* find_part(std::string_view id) const;
  const Part* voice_part() const;

  friend bool operator==(const ScoreDocument&, const ScoreDocument&) = default;
};

}  // namespace melograph

#endif  // MELOGRAPH_SCORE_H_
