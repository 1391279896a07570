#include "melograph/pitch.h"

#include <gtest/gtest.h>

#include <cmath>

#include "melograph/error.h"

namespace melograph {
namespace {

TEST(MidiNumber, Anchors) {
  EXPECT_EQ(midi_number({Step::A, 0, 4}), 69);
  EXPECT_EQ(midi_number({Step::C, 0, 4}), 60);
  EXPECT_EQ(midi_number({Step::B, -1, 4}), 70);
  EXPECT_EQ(midi_number({Step::C, 0, -1}), 0);
  EXPECT_EQ(midi_number({Step::G, 0, 9}), 127);
}

TEST(MidiNumber, OutOfRangeThrows) {
  EXPECT_THROW(midi_number({Step::C, -1, -1}), RangeError);
  EXPECT_THROW(midi_number({Step::G, 1, 9}), RangeError);
}

TEST(PitchName, Spelling) {
  EXPECT_EQ(pitch_name({Step::B, -1, 4}), "Bb4");
  EXPECT_EQ(pitch_name({Step::F, 1, 3}), "F#3");
  EXPECT_EQ(pitch_name({Step::A, 0, 4}), "A4");
}

TEST(Frequency, EqualTemperamentAnchors) {
  EXPECT_NEAR(midi_to_frequency(69), 440.0, 1e-9);
  EXPECT_NEAR(midi_to_frequency(60), 261.63, 0.005);
  EXPECT_NEAR(midi_to_frequency(81), 880.0, 1e-9);
  EXPECT_NEAR(midi_to_frequency(69, Tuning::equal(415.0)), 415.0, 1e-9);
}

TEST(Frequency, CentShiftedDbMatchesWorkedExample) {
  // 277.18 · 2^(23.6/1200)
  const double expected = 277.18 * std::pow(2.0, 23.6 / 1200.0);
  EXPECT_NEAR(midi_to_frequency(61, Tuning::cent_shifted(23.6)), expected, 0.05);
  EXPECT_NEAR(midi_to_frequency(61, Tuning::cent_shifted(23.6)), 281.00, 0.05);
}

TEST(Frequency, StrictlyIncreasingAndOctaveDoubling) {
  for (int m = 0; m < 127; ++m) {
    ASSERT_LT(midi_to_frequency(m), midi_to_frequency(m + 1));
    if (m + 12 <= 127) ASSERT_NEAR(midi_to_frequency(m + 12), 2 * midi_to_frequency(m), 1e-9);
  }
}

TEST(Interval, Examples) {
  EXPECT_EQ(interval(Pitch{Step::C, 0, 4}, Pitch{Step::D, 0, 4}), (Interval{2, 2}));
  EXPECT_EQ(interval(Pitch{Step::A, 0, 4}, Pitch{Step::A, 0, 4}), (Interval{0, 0}));
  EXPECT_EQ(interval(Pitch{Step::C, 0, 5}, Pitch{Step::A, 0, 4}), (Interval{-3, 3}));
}

TEST(Contour, Examples) {
  EXPECT_EQ(classify_contour(0), ContourClass::same);
  EXPECT_EQ(classify_contour(2), ContourClass::up_step);
  EXPECT_EQ(classify_contour(-2), ContourClass::down_step);
  EXPECT_EQ(classify_contour(-3), ContourClass::down_leap);
  EXPECT_EQ(classify_contour(4), ContourClass::up_leap);
}

TEST(Contour, NamesRoundTrip) {
  for (ContourClass c : {ContourClass::same, ContourClass::up_step, ContourClass::down_step, ContourClass::up_leap,
                         ContourClass::down_leap}) {
    EXPECT_EQ(parse_contour(to_string(c)), c);
  }
  EXPECT_FALSE(parse_contour("sideways"));
}

}  // namespace
}  // namespace melograph
