// Register and duration bands used by the pitch × duration distribution.

#ifndef MELOGRAPH_BANDS_H_
#define MELOGRAPH_BANDS_H_

#include <array>
#include <string_view>

#include "melograph/rational.h"

namespace melograph {

enum class PitchBand { low, mid, high };
enum class DurationBand { short_, medium, long_ };

inline constexpr std::array<PitchBand, 3> kPitchBands = {PitchBand::low, PitchBand::mid, PitchBand::high};
inline constexpr std::array<DurationBand, 3> kDurationBands = {DurationBand::short_, DurationBand::medium,
                                                               DurationBand::long_};

/// Band edges. Defaults: low < 60 ≤ mid < 72 ≤ high; short ≤ 1/2 < medium ≤ 1 < long.
struct BandThresholds {
  int mid_min_midi = 60;
  int high_min_midi = 72;
  Rational short_max{1, 2};
  Rational medium_max{1};

  /// Throws UsageError unless edges are strictly increasing and positive.
  void validate() const;

  friend bool operator==(const BandThresholds&, const BandThresholds&) = default;
};

PitchBand pitch_band(int midi, const BandThresholds& bands = {});

/// Requires duration > 0 (RangeError otherwise).
DurationBand duration_band(const Rational& duration, const BandThresholds& bands = {});

std::string_view to_string(PitchBand band) noexcept;
std::string_view to_string(DurationBand band) noexcept;

}  // namespace melograph

#endif  // MELOGRAPH_BANDS_H_
