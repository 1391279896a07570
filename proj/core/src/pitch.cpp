#include "melograph/pitch.h"

#include <array>
#include <cmath>

#include "melograph/error.h"

namespace melograph {
namespace {

constexpr std::array<int, 7> kStepSemitones = {0, 2, 4, 5, 7, 9, 11};
constexpr std::array<char, 7> kStepLetters = {'C', 'D', 'E', 'F', 'G', 'A', 'B'};
constexpr std::array<std::string_view, 5> kContourNames = {"same", "up_step", "down_step", "up_leap",
                                                           "down_leap"};

}  // namespace

std::optional<Step> parse_step(std::string_view letter) {
  if (letter.size() != 1) return std::nullopt;
  for (std::size_t i = 0; i < kStepLetters.size(); ++i) {
    if (kStepLetters[i] == letter.front()) return static_cast<Step>(i);
  }
  return std::nullopt;
}

char step_letter(Step step) { return kStepLetters[static_cast<std::size_t>(step)]; }

int midi_number(const Pitch& pitch) {
  const int midi = 12 * (pitch.octave + 1) + kStepSemitones[static_cast<std::size_t>(pitch.step)] + pitch.alter;
  if (midi < 0 || midi > 127) {
    throw RangeError("pitch " + pitch_name(pitch) + " maps to MIDI " + std::to_string(midi) +
                     ", outside [0,127]");
  }
  return midi;
}

std::string pitch_name(const Pitch& pitch) {
  std::string name(1, step_letter(pitch.step));
  if (pitch.alter > 0) name.append(static_cast<std::size_t>(pitch.alter), '#');
  if (pitch.alter < 0) name.append(static_cast<std::size_t>(-pitch.alter), 'b');
  name += std::to_string(pitch.octave);
  return name;
}

double midi_to_frequency(int midi, const Tuning& tuning) {
  if (midi < 0 || midi > 127) throw RangeError("MIDI number " + std::to_string(midi) + " outside [0,127]");
  if (!(tuning.reference_a4 > 0.0)) throw RangeError("tuning reference must be positive");
  const double equal = tuning.reference_a4 * std::exp2((midi - 69) / 12.0);
  if (tuning.kind == TuningKind::cent_shifted) return equal * std::exp2(tuning.cent_offset / 1200.0);
  return equal;
}

Interval interval(int from_midi, int to_midi) {
  const int delta = to_midi - from_midi;
  return {delta, delta < 0 ? -delta : delta};
}

Interval interval(const Pitch& from, const Pitch& to) { return interval(midi_number(from), midi_number(to)); }

ContourClass classify_contour(int delta) noexcept {
  if (delta == 0) return ContourClass::same;
  const int magnitude = delta < 0 ? -delta : delta;
  if (magnitude <= kMaxStepSemitones) return delta > 0 ? ContourClass::up_step : ContourClass::down_step;
  return delta > 0 ? ContourClass::up_leap : ContourClass::down_leap;
}

std::string_view to_string(ContourClass contour) noexcept {
  return kContourNames[static_cast<std::size_t>(contour)];
}

std::optional<ContourClass> parse_contour(std::string_view name) noexcept {
  for (std::size_t i = 0; i < kContourNames.size(); ++i) {
    if (kContourNames[i] == name) return static_cast<ContourClass>(i);
  }
  return std::nullopt;
}

}  // namespace melograph
