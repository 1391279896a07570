// Pitch spelling, MIDI numbering, tuning and melodic intervals.

#ifndef MELOGRAPH_PITCH_H_
#define MELOGRAPH_PITCH_H_

#include <optional>
#include <string>
#include <string_view>

namespace melograph {

enum class Step { C, D, E, F, G, A, B };

std::optional<Step> parse_step(std::string_view letter);
char step_letter(Step step);

/// A spelled pitch: diatonic step, chromatic alteration in semitones, octave
/// (scientific pitch notation, C4 = middle C).
struct Pitch {
  Step step = Step::C;
  int alter = 0;
  int octave = 4;

  friend bool operator==(const Pitch&, const Pitch&) = default;
};

/// 12·(octave+1) + base(step) + alter. Throws RangeError outside [0,127].
int midi_number(const Pitch& pitch);

/// Spelling such as "A4", "Bb4", "F#3", "Cbb2".
std::string pitch_name(const Pitch& pitch);

enum class TuningKind { equal, cent_shifted };

struct Tuning {
  TuningKind kind = TuningKind::equal;
  double reference_a4 = 440.0;  // Hz
  double cent_offset = 0.0;     // applied only by cent_shifted

  static Tuning equal(double reference_a4 = 440.0) { return {TuningKind::equal, reference_a4, 0.0}; }
  static Tuning cent_shifted(double cents, double reference_a4 = 440.0) {
    return {TuningKind::cent_shifted, reference_a4, cents};
  }
};

/// Frequency in Hz of MIDI note `midi` under `tuning`.
///
/// Equal temperament: reference_a4 · 2^((midi − 69)/12). A cent-shifted tuning
/// multiplies the equal-tempered value by 2^(cent_offset/1200); the
/// Pythagorean C#4 of 281.00 Hz is the +23.6 cent case.
double midi_to_frequency(int midi, const Tuning& tuning = {});

struct Interval {
  int delta = 0;      // signed semitones, to − from
  int magnitude = 0;  // |delta|

  friend bool operator==(const Interval&, const Interval&) = default;
};

Interval interval(const Pitch& from, const Pitch& to);
Interval interval(int from_midi, int to_midi);

enum class ContourClass { same, up_step, down_step, up_leap, down_leap };

inline constexpr int kMaxStepSemitones = 2;

/// same for 0, step for 0 < |delta| ≤ 2, leap beyond; direction by sign.
ContourClass classify_contour(int delta) noexcept;

std::string_view to_string(ContourClass contour) noexcept;
std::optional<ContourClass> parse_contour(std::string_view name) noexcept;

}  // namespace melograph

#endif  // MELOGRAPH_PITCH_H_
