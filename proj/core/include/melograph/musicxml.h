// Reading MusicXML (partwise, uncompressed or .mxl) into a ScoreDocument.

#ifndef MELOGRAPH_MUSICXML_H_
#define MELOGRAPH_MUSICXML_H_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "melograph/score.h"

namespace melograph {

struct RawScoreFile {
  std::string bytes;
  std::string source_path;
};

/// Reads a file from disk. Throws InputError if it cannot be opened.
RawScoreFile read_score_file(const std::filesystem::path& path);

/// Parses uncompressed MusicXML or a compressed .mxl container (detected by
/// its ZIP signature). Part roles are left at their default until
/// assign_part_roles runs.
///
/// Malformed XML raises ParseError with the byte offset of the failure, a
/// timed note before any divisions raises StructureError, and score-timewise
/// raises UnsupportedFormatError.
ScoreDocument parse_musicxml(const RawScoreFile& file);

/// Marks the part that carries lyrics as the voice, every other part as
/// piano. `voice_part_override` names the voice part explicitly. Throws
/// RoleAssignmentError when no override is given and the lyric-bearing part
/// is missing or ambiguous.
ScoreDocument assign_part_roles(ScoreDocument doc, const std::optional<std::string>& voice_part_override = {});

/// Collapses tie chains (same voice, same pitch, contiguous) into a single
/// event whose duration is the chain total; the head keeps its lyric.
/// Tie-stops without a matching start are kept unmerged and counted.
ScoreDocument merge_ties(ScoreDocument doc);

struct ConservationViolation {
  std::string part_id;
  int measure_index = 0;
  int voice = 0;
  Rational filled;
  Rational expected;
};

/// Per part, measure and voice: sum of non-chord event durations must equal
/// the measure length. Returns every mismatch found.
std::vector<ConservationViolation> check_onset_conservation(const ScoreDocument& doc);

/// Smallest divisions-per-quarter that expresses every onset and duration of
/// `measure` (relative to the measure start) as an integer.
std::int64_t minimal_divisions(const Measure& measure);

}  // namespace melograph

#endif  // MELOGRAPH_MUSICXML_H_
