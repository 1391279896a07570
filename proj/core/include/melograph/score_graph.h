// Heterogeneous note / syllable / piano graph of a vocal score.
//
// Node kinds:
//   note      one per sung event of the voice part (rests have no node)
//   syllable  one per lyric attachment, in reading order
//   piano     one per pitch of the accompaniment; chords are split per pitch
//
// Edge kinds (all directed):
//   next_note, next_syllable, next_piano   simple chains in temporal order
//   vert            piano ↔ piano at the same onset bucket, stored both ways
//   sung_on_head    melisma head note → its syllable
//   sung_on         every note of a melisma (head included) → its syllable
//   piano_sung_on   piano → note when their onsets coincide within tolerance

#ifndef MELOGRAPH_SCORE_GRAPH_H_
#define MELOGRAPH_SCORE_GRAPH_H_

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "melograph/rational.h"
#include "melograph/score.h"
#include "melograph/vowel.h"

namespace melograph {

enum class NodeKind { note, syllable, piano };
enum class EdgeKind { next_note, next_syllable, next_piano, vert, sung_on_head, sung_on, piano_sung_on };

inline constexpr std::size_t kEdgeKindCount = 7;
inline constexpr std::array<EdgeKind, kEdgeKindCount> kEdgeKinds = {
    EdgeKind::next_note, EdgeKind::next_syllable, EdgeKind::next_piano,   EdgeKind::vert,
    EdgeKind::sung_on_head, EdgeKind::sung_on,   EdgeKind::piano_sung_on};

std::string_view to_string(NodeKind kind) noexcept;
std::string_view to_string(EdgeKind kind) noexcept;

struct SyllableUnit {
  std::string text;
  Vowel principal_vowel = Vowel::consonant_only;
  int sequence_index = 0;
  bool is_melismatic = false;  // carries two or more sung notes
  Syllabic syllabic = Syllabic::single;

  friend bool operator==(const SyllableUnit&, const SyllableUnit&) = default;
};

struct GraphNode {
  std::string id;
  NodeKind kind = NodeKind::note;
  std::variant<NoteEvent, SyllableUnit> payload;
  bool is_head = false;  // note nodes: first note of a syllable
  std::optional<std::string> tonal_function;

  const NoteEvent* event() const { return std::get_if<NoteEvent>(&payload); }
  const SyllableUnit* syllable() const { return std::get_if<SyllableUnit>(&payload); }

  /// Pitch spelling for note/piano nodes, text for syllables.
  std::string label() const;

  friend bool operator==(const GraphNode&, const GraphNode&) = default;
};

struct GraphEdge {
  std::size_t src = 0;
  std::size_t dst = 0;
  EdgeKind kind = EdgeKind::next_note;

  friend bool operator==(const GraphEdge&, const GraphEdge&) = default;
};

/// Typed directed multigraph with per-kind adjacency. Edges are checked
/// against the endpoint kinds their kind admits.
class ScoreGraph {
 public:
  std::size_t add_node(GraphNode node);
  void add_edge(std::size_t src, std::size_t dst, EdgeKind kind);

  /// Drops every edge of `kind`.
  void remove_edges(EdgeKind kind);

  const std::vector<GraphNode>& nodes() const noexcept { return nodes_; }
  const std::vector<GraphEdge>& edges() const noexcept { return edges_; }
  const GraphNode& node(std::size_t index) const { return nodes_.at(index); }
  std::optional<std::size_t> find(std::string_view id) const;

  /// Node indices of one kind, in insertion (temporal) order.
  const std::vector<std::size_t>& nodes_of(NodeKind kind) const noexcept {
    return by_kind_[static_cast<std::size_t>(kind)];
  }

  /// Neighbours reached through edges of `kind`.
  const std::vector<std::size_t>& successors(std::size_t node, EdgeKind kind) const {
    return out_.at(node)[static_cast<std::size_t>(kind)];
  }
  const std::vector<std::size_t>& predecessors(std::size_t node, EdgeKind kind) const {
    return in_.at(node)[static_cast<std::size_t>(kind)];
  }

  std::size_t in_degree(std::size_t node, EdgeKind kind) const { return predecessors(node, kind).size(); }
  std::size_t out_degree(std::size_t node, EdgeKind kind) const { return successors(node, kind).size(); }
  std::size_t edge_count(EdgeKind kind) const noexcept;
  std::size_t node_count(NodeKind kind) const noexcept { return nodes_of(kind).size(); }

  void set_tonal_function(std::size_t node, std::string label) { nodes_.at(node).tonal_function = std::move(label); }

  /// Score identifier carried into exports and reports.
  std::string score_id;
  /// Sung notes before the first lyric; they have no syllable.
  int unassigned_notes = 0;

 private:
  using Adjacency = std::array<std::vector<std::size_t>, kEdgeKindCount>;

  std::vector<GraphNode> nodes_;
  std::vector<GraphEdge> edges_;
  std::vector<Adjacency> out_;
  std::vector<Adjacency> in_;
  std::array<std::vector<std::size_t>, 3> by_kind_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct GraphConfig {
  Rational alignment_tolerance;  // 0 = exact onset equality
  Rational vert_bucket;          // 0 = bucket by exact onset
  bool include_piano = true;
};

/// One syllable and the notes that carry it. Indices refer to the event
/// sequence passed to detect_melismas.
struct Melisma {
  LyricAttachment lyric;
  std::size_t head = 0;
  std::vector<std::size_t> extensions;
};

struct MelismaScan {
  std::vector<Melisma> melismas;
  std::vector<bool> is_head;             // parallel to the input events
  std::vector<std::size_t> unassigned;   // lyric-less notes before the first head
};

/// A note with a lyric starts a melisma; each following lyric-less note
/// extends the most recent head.
MelismaScan detect_melismas(std::span<const NoteEvent> voice_events);

/// The melodic line of the voice part: pitched, non-grace, non-chord events
/// of the voice number that carries the most lyrics, in onset order.
std::vector<NoteEvent> vocal_line(const Part& voice_part);

/// Directed vert pairs (indices into `piano_events`): every ordered pair of
/// distinct events sharing an onset bucket. `bucket_width` 0 groups by exact
/// onset, otherwise by floor(onset / width).
std::vector<std::pair<std::size_t, std::size_t>> vert_edges(std::span<const NoteEvent> piano_events,
                                                            const Rational& bucket_width = {});

/// Rebuilds piano_sung_on edges: piano → note for |onset difference| ≤ tolerance.
ScoreGraph align_piano_to_voice(ScoreGraph graph, const Rational& tolerance = {});

/// Builds the complete graph. Requires a part with role voice (BuildError).
ScoreGraph build_graph(const ScoreDocument& doc, const GraphConfig& config = {});

/// Summary figures for the melody–lyrics subgraph: note and syllable
/// nodes with next_note, next_syllable and sung_on edges.
struct DegreeExtreme {
  std::size_t degree = 0;
  std::string node_id;
  std::string label;
};

struct GraphSummary {
  std::size_t melody_nodes = 0;
  std::size_t lyric_nodes = 0;
  std::size_t total_nodes = 0;
  std::size_t note_to_syllable_edges = 0;
  std::size_t total_edges = 0;
  std::optional<Rational> density;  // E / (N(N−1)); empty when N < 2
  Rational avg_in_notes;
  Rational avg_out_notes;
  Rational avg_in_syllables;
  Rational avg_out_syllables;
  DegreeExtreme max_degree;        // maximum syllable in-degree
  DegreeExtreme max_total_degree;  // maximum in+out over the subgraph
  std::size_t min_degree = 0;      // minimum in-degree over the subgraph
  std::map<std::size_t, std::size_t> degree_histogram;  // syllable in-degree → count
  int unassigned_notes = 0;

  bool empty() const noexcept { return total_nodes == 0; }
};

GraphSummary melody_lyrics_summary(const ScoreGraph& graph);

/// δ = edges / (nodes · (nodes − 1)); empty for fewer than two nodes.
std::optional<Rational> graph_density(std::size_t edges, std::size_t nodes);

}  // namespace melograph

#endif  // MELOGRAPH_SCORE_GRAPH_H_
