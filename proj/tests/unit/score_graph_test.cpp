#include "melograph/score_graph.h"

#include <gtest/gtest.h>

#include "melograph/error.h"
#include "melograph/musicxml.h"
#include "score_builder.h"

namespace melograph {
namespace {

using testing::accompaniment;
using testing::fixture;
using testing::make_document;
using testing::melody;
using testing::sung;

ScoreGraph graph_of(const std::string& relative, const GraphConfig& config = {}) {
  return build_graph(assign_part_roles(merge_ties(parse_musicxml(read_score_file(fixture(relative))))), config);
}

TEST(BuildGraph, ToyVoiceAndPiano) {
  const ScoreGraph g = graph_of("parser/toy_voice_piano.xml");
  EXPECT_EQ(g.node_count(NodeKind::note), 3u);
  EXPECT_EQ(g.node_count(NodeKind::syllable), 2u);
  EXPECT_EQ(g.edge_count(EdgeKind::next_note), 2u);
  EXPECT_EQ(g.edge_count(EdgeKind::next_syllable), 1u);
  EXPECT_EQ(g.edge_count(EdgeKind::sung_on_head), 2u);
  EXPECT_EQ(g.edge_count(EdgeKind::sung_on), 3u);
  EXPECT_EQ(g.node_count(NodeKind::piano), 3u);
  EXPECT_EQ(g.edge_count(EdgeKind::vert), 6u);
  EXPECT_EQ(g.edge_count(EdgeKind::piano_sung_on), 3u);
  EXPECT_EQ(g.edge_count(EdgeKind::next_piano), 2u);

  // The melisma on "la" is sung on notes 2 and 3.
  const std::size_t la = *g.find("s1");
  EXPECT_EQ(g.in_degree(la, EdgeKind::sung_on), 2u);
  EXPECT_EQ(g.in_degree(la, EdgeKind::sung_on_head), 1u);
  EXPECT_TRUE(g.node(la).syllable()->is_melismatic);
  EXPECT_TRUE(g.node(*g.find("n1")).is_head);
  EXPECT_FALSE(g.node(*g.find("n2")).is_head);
}

TEST(BuildGraph, SingleNote) {
  const ScoreGraph g = graph_of("parser/single_note.xml");
  EXPECT_EQ(g.edge_count(EdgeKind::next_note), 0u);
  EXPECT_EQ(g.edge_count(EdgeKind::next_syllable), 0u);
  EXPECT_EQ(g.edge_count(EdgeKind::sung_on_head), 1u);
  EXPECT_EQ(g.edge_count(EdgeKind::sung_on), 1u);
}

TEST(BuildGraph, MultiStaffPiano) {
  const ScoreGraph g = graph_of("parser/multi_staff_piano.xml");
  EXPECT_EQ(g.node_count(NodeKind::piano), 4u);
  // C5, E5 and C3 sound together at 0; G2 alone at 2.
  EXPECT_EQ(g.edge_count(EdgeKind::vert), 6u);
  EXPECT_EQ(g.edge_count(EdgeKind::piano_sung_on), 4u);
  EXPECT_EQ(g.edge_count(EdgeKind::next_piano), 3u);
}

TEST(BuildGraph, RestsDoNotBreakMelodicChain) {
  const ScoreGraph g = graph_of("parser/rest.xml");
  EXPECT_EQ(g.node_count(NodeKind::note), 2u);
  EXPECT_EQ(g.edge_count(EdgeKind::next_note), 1u);
}

TEST(BuildGraph, ChordMembersStayOutOfMelody) {
  const ScoreGraph g = graph_of("parser/chord.xml");
  EXPECT_EQ(g.node_count(NodeKind::note), 1u);
}

TEST(BuildGraph, PianoCanBeExcluded) {
  GraphConfig config;
  config.include_piano = false;
  const ScoreGraph g = graph_of("parser/toy_voice_piano.xml", config);
  EXPECT_EQ(g.node_count(NodeKind::piano), 0u);
  EXPECT_EQ(g.edge_count(EdgeKind::vert), 0u);
}

TEST(BuildGraph, RequiresVoicePart) {
  ScoreDocument doc = make_document(melody({60}, {Rational(1)}, {"la"}));
  doc.parts[0].role = PartRole::piano;
  EXPECT_THROW(build_graph(doc), BuildError);
}

TEST(BuildGraph, LeadingLyriclessNotesAreUnassigned) {
  const ScoreGraph g = build_graph(make_document(melody({60, 62, 64}, {Rational(1)}, {"", "", "la"})));
  EXPECT_EQ(g.unassigned_notes, 2);
  EXPECT_EQ(g.edge_count(EdgeKind::sung_on), 1u);
  EXPECT_EQ(g.edge_count(EdgeKind::next_note), 2u);
  EXPECT_EQ(melody_lyrics_summary(g).unassigned_notes, 2);
}

TEST(BuildGraph, DeterministicIds) {
  const ScoreGraph a = graph_of("parser/multi_staff_piano.xml");
  const ScoreGraph b = graph_of("parser/multi_staff_piano.xml");
  EXPECT_EQ(a.nodes(), b.nodes());
  EXPECT_EQ(a.edges(), b.edges());
}

TEST(ScoreGraphContainer, RejectsBadEdgesAndDuplicateIds) {
  ScoreGraph g;
  const std::size_t n = g.add_node({"n0", NodeKind::note, sung(60, 0, 1), true, {}});
  const std::size_t s = g.add_node({"s0", NodeKind::syllable, SyllableUnit{"la"}, false, {}});
  EXPECT_THROW(g.add_node({"n0", NodeKind::note, sung(62, 1, 1), false, {}}), BuildError);
  EXPECT_THROW(g.add_node({"x", NodeKind::syllable, sung(62, 1, 1), false, {}}), BuildError);
  EXPECT_THROW(g.add_edge(s, n, EdgeKind::sung_on), BuildError);
  EXPECT_THROW(g.add_edge(n, s, EdgeKind::next_note), BuildError);
  EXPECT_THROW(g.add_edge(n, 7, EdgeKind::sung_on), BuildError);
  g.add_edge(n, s, EdgeKind::sung_on);
  EXPECT_EQ(g.successors(n, EdgeKind::sung_on), std::vector<std::size_t>{s});
  g.remove_edges(EdgeKind::sung_on);
  EXPECT_EQ(g.edge_count(EdgeKind::sung_on), 0u);
  EXPECT_TRUE(g.predecessors(s, EdgeKind::sung_on).empty());
}

TEST(DetectMelismas, SixNoteMelismaOnDa) {
  const auto events = melody({69, 71, 72, 71, 69, 67, 65}, {Rational(1, 2)}, {"da", "", "", "", "", "", "me"});
  const MelismaScan scan = detect_melismas(events);
  ASSERT_EQ(scan.melismas.size(), 2u);
  EXPECT_EQ(scan.melismas[0].lyric.text, "da");
  EXPECT_EQ(scan.melismas[0].head, 0u);
  EXPECT_EQ(scan.melismas[0].extensions, (std::vector<std::size_t>{1, 2, 3, 4, 5}));
  EXPECT_TRUE(scan.melismas[1].extensions.empty());
}

TEST(DetectMelismas, FullySyllabic) {
  const auto events = melody({60, 62, 64}, {Rational(1)}, {"a", "b", "c"});
  for (const auto& m : detect_melismas(events).melismas) EXPECT_TRUE(m.extensions.empty());
}

TEST(DetectMelismas, AlternatingLyrics) {
  const auto events = melody({60, 62, 64, 65, 67, 69}, {Rational(1)}, {"a", "", "b", "", "c", ""});
  const MelismaScan scan = detect_melismas(events);
  ASSERT_EQ(scan.melismas.size(), 3u);
  for (const auto& m : scan.melismas) EXPECT_EQ(m.extensions.size(), 1u);
}

TEST(DetectMelismas, LeadingNotesUnassigned) {
  const auto events = melody({60, 62, 64}, {Rational(1)}, {"", "", "la"});
  const MelismaScan scan = detect_melismas(events);
  EXPECT_EQ(scan.unassigned, (std::vector<std::size_t>{0, 1}));
  ASSERT_EQ(scan.melismas.size(), 1u);
  EXPECT_EQ(scan.is_head, (std::vector<bool>{false, false, true}));
}

TEST(VocalLine, PicksLyricVoiceAndDropsChords) {
  ScoreDocument doc = make_document({sung(60, 0, 1, "la"), accompaniment(64, 0, 1, true), sung(62, 1, 1, "mi")});
  NoteEvent other = sung(48, 0, 2);
  other.voice = 2;
  doc.parts[0].measures[0].events.push_back(other);
  const auto line = vocal_line(doc.parts[0]);
  ASSERT_EQ(line.size(), 2u);
  EXPECT_EQ(midi_number(*line[0].pitch), 60);
  EXPECT_EQ(midi_number(*line[1].pitch), 62);
}

TEST(VertEdges, Examples) {
  const std::vector<NoteEvent> triad = {accompaniment(60, 0, 1), accompaniment(64, 0, 1), accompaniment(67, 0, 1)};
  EXPECT_EQ(vert_edges(triad).size(), 6u);
  const std::vector<NoteEvent> single = {accompaniment(60, 0, 1)};
  EXPECT_TRUE(vert_edges(single).empty());
  const std::vector<NoteEvent> pairs = {accompaniment(60, 0, 1), accompaniment(64, 0, 1), accompaniment(62, 1, 1),
                                        accompaniment(65, 1, 1)};
  EXPECT_EQ(vert_edges(pairs).size(), 4u);
}

TEST(VertEdges, BucketWidthGroupsNearbyOnsets) {
  const std::vector<NoteEvent> events = {accompaniment(60, Rational(0), 1), accompaniment(64, Rational(1, 4), 1),
                                         accompaniment(67, Rational(1, 2), 1)};
  EXPECT_TRUE(vert_edges(events).empty());
  EXPECT_EQ(vert_edges(events, Rational(1, 2)).size(), 2u);
  EXPECT_EQ(vert_edges(events, Rational(1)).size(), 6u);
}

std::size_t aligned(const Rational& piano_onset, const Rational& voice_onset, const Rational& tolerance) {
  ScoreDocument doc = make_document({sung(60, voice_onset, 1, "la")}, {accompaniment(48, piano_onset, 1)});
  GraphConfig config;
  config.alignment_tolerance = tolerance;
  const ScoreGraph g = build_graph(doc, config);
  const ScoreGraph realigned = align_piano_to_voice(g, tolerance);
  EXPECT_EQ(realigned.edge_count(EdgeKind::piano_sung_on), g.edge_count(EdgeKind::piano_sung_on));
  return g.edge_count(EdgeKind::piano_sung_on);
}

TEST(AlignPiano, ToleranceExamples) {
  EXPECT_EQ(aligned(Rational(1, 2), Rational(1, 2), Rational(0)), 1u);
  EXPECT_EQ(aligned(Rational(1, 2), Rational(3, 4), Rational(0)), 0u);
  EXPECT_EQ(aligned(Rational(127, 256), Rational(1, 2), Rational(1, 128)), 1u);
  EXPECT_EQ(aligned(Rational(125, 256), Rational(1, 2), Rational(1, 128)), 0u);
}

TEST(Summary, MelismaFixtureMaxDegreeSeven) {
  const GraphSummary s = melody_lyrics_summary(graph_of("parser/melisma.xml"));
  EXPECT_EQ(s.max_degree.degree, 7u);
  EXPECT_EQ(s.max_degree.label, "da");
  EXPECT_EQ(s.melody_nodes, 8u);
  EXPECT_EQ(s.lyric_nodes, 3u);
  EXPECT_EQ(s.min_degree, 0u);
  EXPECT_EQ(s.degree_histogram, (std::map<std::size_t, std::size_t>{{1, 1}, {2, 1}, {7, 1}}));
}

TEST(Summary, DensityFormula) {
  EXPECT_EQ(*graph_density(295, 186), Rational(295, 186 * 185));
  EXPECT_FALSE(graph_density(0, 1));
  EXPECT_FALSE(graph_density(0, 0));
}

TEST(Summary, EmptyGraph) {
  const GraphSummary s = melody_lyrics_summary(ScoreGraph{});
  EXPECT_TRUE(s.empty());
  EXPECT_FALSE(s.density);
  EXPECT_EQ(s.total_edges, 0u);
}

TEST(Summary, ReconstructedVariantMatchesTableFigures) {
  const GraphSummary s = melody_lyrics_summary(graph_of("corpus/ii1a.xml"));
  EXPECT_EQ(s.melody_nodes, 111u);
  EXPECT_EQ(s.lyric_nodes, 75u);
  EXPECT_EQ(s.total_nodes, 186u);
  EXPECT_EQ(s.note_to_syllable_edges, 111u);
  EXPECT_EQ(s.total_edges, 295u);
  EXPECT_EQ(to_fixed(*s.density, 4), "0.0086");
  EXPECT_EQ(to_fixed(s.avg_in_notes, 2), "0.99");
  EXPECT_EQ(to_fixed(s.avg_out_notes, 2), "1.99");
  EXPECT_EQ(to_fixed(s.avg_in_syllables, 2), "2.47");
  EXPECT_EQ(to_fixed(s.avg_out_syllables, 2), "0.99");
  EXPECT_EQ(s.max_degree.degree, 7u);
  EXPECT_EQ(s.max_degree.label, "da");
  EXPECT_EQ(s.min_degree, 0u);
}

}  // namespace
}  // namespace melograph
