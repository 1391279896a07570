#include "melograph/bands.h"

#include "melograph/error.h"

namespace melograph {

void BandThresholds::validate() const {
  if (!(0 < mid_min_midi && mid_min_midi < high_min_midi && high_min_midi <= 127)) {
    throw UsageError("pitch band thresholds must satisfy 0 < mid < high <= 127");
  }
  if (!(Rational(0) < short_max && short_max < medium_max)) {
    throw UsageError("duration band thresholds must satisfy 0 < short < medium");
  }
}

PitchBand pitch_band(int midi, const BandThresholds& bands) {
  if (midi < 0 || midi > 127) throw RangeError("MIDI number " + std::to_string(midi) + " outside [0,127]");
  if (midi < bands.mid_min_midi) return PitchBand::low;
  if (midi < bands.high_min_midi) return PitchBand::mid;
  return PitchBand::high;
}

DurationBand duration_band(const Rational& duration, const BandThresholds& bands) {
  if (duration <= Rational(0)) throw RangeError("duration band requires a positive duration");
  if (duration <= bands.short_max) return DurationBand::short_;
  if (duration <= bands.medium_max) return DurationBand::medium;
  return DurationBand::long_;
}

std::string_view to_string(PitchBand band) noexcept {
  switch (band) {
    case PitchBand::low: return "low";
    case PitchBand::mid: return "mid";
    case PitchBand::high: return "high";
  }
  return "?";
}

std::string_view to_string(DurationBand band) noexcept {
  switch (band) {
    case DurationBand::short_: return "short";
    case DurationBand::medium: return "medium";
    case DurationBand::long_: return "long";
  }
  return "?";
}

}  // namespace melograph
