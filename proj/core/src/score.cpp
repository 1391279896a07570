#include "melograph/score.h"

namespace melograph {

std::string_view to_string(Syllabic syllabic) noexcept {
  switch (syllabic) {
    case Syllabic::single: return "single";
    case Syllabic::begin: return "begin";
    case Syllabic::middle: return "middle";
    case Syllabic::end: return "end";
  }
  return "single";
}

std::string_view to_string(PartRole role) noexcept { return role == PartRole::voice ? "voice" : "piano"; }

std::size_t Part::lyric_count() const {
  std::size_t count = 0;
  for (const Measure& measure : measures) {
    for (const NoteEvent& event : measure.events) {
      if (event.lyric) ++count;
    }
  }
  return count;
}

std::vector<int> ScoreDocument::divisions_map() const {
  std::vector<int> out;
  if (parts.empty()) return out;
  out.reserve(parts.front().measures.size());
  for (const Measure& measure : parts.front().measures) out.push_back(measure.divisions);
  return out;
}

const Part* ScoreDocument::find_part(std::string_view id) const {
  for (const Part& part : parts) {
    if (part.id == id) return &part;
  }
  return nullptr;
}

const Part* ScoreDocument::voice_part() const {
  for (const Part& part : parts) {
    if (part.role == PartRole::voice) return &part;
  }
  return nullptr;
}

}  // namespace melograph
