// Randomised invariants. Every generator is seeded; a failing trial prints
// its seed and sizes.
#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "melograph/bands.h"
#include "melograph/melotext.h"
#include "melograph/musicxml.h"
#include "melograph/pitch.h"
#include "melograph/score_graph.h"
#include "score_builder.h"

namespace melograph {
namespace {

using testing::uniform;

ContourClass contour_oracle(int delta) {
  if (delta == 0) return ContourClass::same;
  const bool up = delta > 0;
  const int size = up ? delta : -delta;
  if (size <= 2) return up ? ContourClass::up_step : ContourClass::down_step;
  return up ? ContourClass::up_leap : ContourClass::down_leap;
}

TEST(ContourProperty, MatchesOracleOverFourOctaves) {
  for (int delta = -48; delta <= 48; ++delta) ASSERT_EQ(classify_contour(delta), contour_oracle(delta)) << delta;
}

TEST(BandProperty, PitchBandsPartitionMidiRange) {
  for (int m = 0; m <= 127; ++m) {
    const int hits = (m < 60) + (m >= 60 && m < 72) + (m >= 72);
    ASSERT_EQ(hits, 1);
    const PitchBand expected = m < 60 ? PitchBand::low : (m < 72 ? PitchBand::mid : PitchBand::high);
    ASSERT_EQ(pitch_band(m), expected) << m;
  }
}

TEST(BandProperty, DurationBandsPartitionPositiveRationals) {
  std::mt19937_64 rng(60);
  const Rational half(1, 2);
  const Rational one(1);
  for (int trial = 0; trial < 10000; ++trial) {
    const Rational d(uniform(rng, 1, 5000), uniform(rng, 1, 1024));
    const bool s = d <= half;
    const bool med = half < d && d <= one;
    const bool l = one < d;
    ASSERT_EQ(s + med + l, 1);
    const DurationBand expected = s ? DurationBand::short_ : (med ? DurationBand::medium : DurationBand::long_);
    ASSERT_EQ(duration_band(d), expected) << d;
  }
}

TEST(GraphProperty, TableIdentitiesHoldOnRandomScores) {
  std::mt19937_64 rng(186);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = uniform(rng, 2, 200);
    const int m = uniform(rng, 2, n);
    const auto score = testing::random_voice_score(rng, n, m);
    const ScoreGraph g = build_graph(score.doc);
    const GraphSummary s = melody_lyrics_summary(g);
    SCOPED_TRACE("trial " + std::to_string(trial) + " n=" + std::to_string(n) + " m=" + std::to_string(m));
    const auto nn = static_cast<std::size_t>(n);
    const auto mm = static_cast<std::size_t>(m);
    ASSERT_EQ(s.melody_nodes, nn);
    ASSERT_EQ(s.lyric_nodes, mm);
    ASSERT_EQ(s.total_edges, (nn - 1) + (mm - 1) + nn);
    ASSERT_EQ(s.note_to_syllable_edges, nn);
    ASSERT_EQ(s.avg_in_notes, Rational(n - 1, n));
    ASSERT_EQ(s.avg_out_notes, Rational(2 * n - 1, n));
    ASSERT_EQ(s.avg_in_syllables, Rational(n + m - 1, m));
    ASSERT_EQ(s.avg_out_syllables, Rational(m - 1, m));
    ASSERT_EQ(*s.density, Rational(static_cast<std::int64_t>(s.total_edges), (n + m) * (n + m - 1)));
    ASSERT_EQ(s.min_degree, 0u);

    // The syllable carrying the longest melisma has in-degree size + 1
    // (the first syllable has no next_syllable predecessor).
    std::size_t expected_max = 0;
    for (std::size_t i = 0; i < score.melisma_sizes.size(); ++i) {
      expected_max = std::max(expected_max, static_cast<std::size_t>(score.melisma_sizes[i]) + (i > 0 ? 1 : 0));
    }
    ASSERT_EQ(s.max_degree.degree, expected_max);

    ASSERT_EQ(pitch_duration_matrix(g).total(), m);
    ASSERT_EQ(vowel_transition_matrix(g).total(), m - 1);
    ASSERT_EQ(g.edge_count(EdgeKind::sung_on_head), mm);
  }
}

void expect_simple_chain(const ScoreGraph& g, NodeKind node_kind, EdgeKind edge_kind) {
  const auto& nodes = g.nodes_of(node_kind);
  if (nodes.empty()) return;
  std::size_t sources = 0;
  std::size_t sinks = 0;
  for (std::size_t v : nodes) {
    ASSERT_LE(g.in_degree(v, edge_kind), 1u);
    ASSERT_LE(g.out_degree(v, edge_kind), 1u);
    sources += g.in_degree(v, edge_kind) == 0;
    sinks += g.out_degree(v, edge_kind) == 0;
  }
  ASSERT_EQ(sources, 1u);
  ASSERT_EQ(sinks, 1u);
  ASSERT_EQ(g.edge_count(edge_kind), nodes.size() - 1);
}

TEST(GraphProperty, ChainsAndVertCounts) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = uniform(rng, 1, 40);
    auto score = testing::random_voice_score(rng, n + 1, uniform(rng, 1, n + 1));

    // Piano: random chords at random grid onsets.
    std::vector<NoteEvent> piano;
    std::map<Rational, int> per_onset;
    const int chords = uniform(rng, 1, 20);
    for (int c = 0; c < chords; ++c) {
      const Rational onset(uniform(rng, 0, 40), 2);
      const int size = uniform(rng, 1, 4);
      for (int k = 0; k < size; ++k) {
        piano.push_back(testing::accompaniment(uniform(rng, 36, 84), onset, Rational(1, 2), k > 0));
        ++per_onset[onset];
      }
    }
    const ScoreDocument doc = testing::make_document(score.doc.parts[0].measures[0].events, piano);
    const ScoreGraph g = build_graph(doc);

    expect_simple_chain(g, NodeKind::note, EdgeKind::next_note);
    expect_simple_chain(g, NodeKind::syllable, EdgeKind::next_syllable);
    expect_simple_chain(g, NodeKind::piano, EdgeKind::next_piano);

    std::size_t expected_vert = 0;
    for (const auto& [onset, k] : per_onset) expected_vert += static_cast<std::size_t>(k * (k - 1));
    ASSERT_EQ(g.edge_count(EdgeKind::vert), expected_vert);

    // piano_sung_on: every piano node aligned to every note at the same onset.
    std::size_t expected_align = 0;
    for (std::size_t p : g.nodes_of(NodeKind::piano)) {
      for (std::size_t v : g.nodes_of(NodeKind::note)) {
        expected_align += g.node(p).event()->onset == g.node(v).event()->onset;
      }
    }
    ASSERT_EQ(g.edge_count(EdgeKind::piano_sung_on), expected_align);

    const ScoreGraph again = build_graph(doc);
    ASSERT_EQ(again.nodes(), g.nodes());
    ASSERT_EQ(again.edges(), g.edges());
  }
}

ScoreGraph relabel(const ScoreGraph& g) {
  ScoreGraph out;
  for (GraphNode node : g.nodes()) {
    node.id = "x" + node.id + "_" + std::to_string(node.id.size());
    out.add_node(std::move(node));
  }
  for (const GraphEdge& e : g.edges()) out.add_edge(e.src, e.dst, e.kind);
  return out;
}

TEST(AnalyticsProperty, InvariantUnderRelabelingAndRepeatable) {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = uniform(rng, 2, 120);
    const auto score = testing::random_voice_score(rng, n, uniform(rng, 2, n));
    const ScoreGraph g = build_graph(score.doc);
    const ScoreGraph r = relabel(g);
    ASSERT_EQ(bigram_contour_counts(g), bigram_contour_counts(r));
    ASSERT_EQ(pitch_duration_matrix(g), pitch_duration_matrix(r));
    ASSERT_EQ(vowel_transition_matrix(g), vowel_transition_matrix(r));
    ASSERT_EQ(vowel_duration_stats(g), vowel_duration_stats(g));
    ASSERT_EQ(syllabic_bigram_contours(g, 15), syllabic_bigram_contours(g, 15));
  }
}

// Writes a random one-part score as MusicXML and returns the expected
// (midi, onset, duration) trace computed from the tick counts.
struct GeneratedScore {
  std::string xml;
  std::vector<std::tuple<int, Rational, Rational>> expected;  // midi −1 for rests
};

GeneratedScore random_musicxml(std::mt19937_64& rng) {
  static constexpr int kDivisions[] = {1, 2, 3, 4, 6, 8, 12, 24, 256};
  const int div = kDivisions[uniform(rng, 0, 8)];
  std::ostringstream xml;
  xml << "<?xml version=\"1.0\"?>\n<score-partwise version=\"3.1\"><part-list>"
      << "<score-part id=\"P1\"><part-name>V</part-name></score-part></part-list><part id=\"P1\">";
  GeneratedScore out;
  std::int64_t measure_start = 0;
  const int measures = uniform(rng, 1, 4);
  for (int mi = 0; mi < measures; ++mi) {
    xml << "<measure number=\"" << mi + 1 << "\">";
    if (mi == 0) xml << "<attributes><divisions>" << div << "</divisions></attributes>";
    std::int64_t cursor = 0;
    const int notes = uniform(rng, 1, 8);
    std::vector<std::tuple<int, Rational, Rational>> voice2;
    for (int k = 0; k < notes; ++k) {
      const int ticks = uniform(rng, 1, 3 * div);
      const bool rest = uniform(rng, 0, 5) == 0;
      const int midi = uniform(rng, 48, 84);
      const Pitch p = testing::pitch_from_midi(midi);
      xml << "<note>";
      if (rest) {
        xml << "<rest/>";
      } else {
        xml << "<pitch><step>" << step_letter(p.step) << "</step>";
        if (p.alter) xml << "<alter>" << p.alter << "</alter>";
        xml << "<octave>" << p.octave << "</octave></pitch>";
      }
      xml << "<duration>" << ticks << "</duration><voice>1</voice></note>";
      out.expected.emplace_back(rest ? -1 : midi, Rational(measure_start + cursor, div), Rational(ticks, div));
      cursor += ticks;
    }
    if (uniform(rng, 0, 1) == 1) {
      // Second voice covering the same span via backup.
      xml << "<backup><duration>" << cursor << "</duration></backup>";
      xml << "<note><pitch><step>C</step><octave>3</octave></pitch><duration>" << cursor
          << "</duration><voice>2</voice></note>";
      out.expected.emplace_back(48, Rational(measure_start, div), Rational(cursor, div));
    }
    xml << "</measure>";
    measure_start += cursor;
  }
  xml << "</part></score-partwise>\n";
  out.xml = xml.str();
  std::stable_sort(out.expected.begin(), out.expected.end(),
                   [](const auto& a, const auto& b) { return std::get<1>(a) < std::get<1>(b); });
  return out;
}

TEST(ParserProperty, GeneratedScoresRoundTrip) {
  std::mt19937_64 rng(256);
  for (int trial = 0; trial < 300; ++trial) {
    const GeneratedScore gen = random_musicxml(rng);
    const ScoreDocument doc = parse_musicxml({gen.xml, "generated"});
    std::vector<std::tuple<int, Rational, Rational>> got;
    for (const Measure& m : doc.parts[0].measures) {
      for (const NoteEvent& e : m.events) got.emplace_back(e.is_rest() ? -1 : midi_number(*e.pitch), e.onset, e.duration);
    }
    std::stable_sort(got.begin(), got.end(), [](const auto& a, const auto& b) { return std::get<1>(a) < std::get<1>(b); });
    ASSERT_EQ(got.size(), gen.expected.size()) << gen.xml;
    // Same multiset per onset: compare after sorting fully.
    auto full_sort = [](auto v) {
      std::sort(v.begin(), v.end());
      return v;
    };
    ASSERT_EQ(full_sort(got), full_sort(gen.expected)) << gen.xml;
    ASSERT_EQ(parse_musicxml({gen.xml, "generated"}), doc);
  }
}

}  // namespace
}  // namespace melograph
