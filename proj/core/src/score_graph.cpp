#include "melograph/score_graph.h"

#include <algorithm>
#include <tuple>

#include "melograph/error.h"

namespace melograph {
namespace {

constexpr std::array<std::string_view, 3> kNodeKindNames = {"note", "syllable", "piano"};
constexpr std::array<std::string_view, kEdgeKindCount> kEdgeKindNames = {
    "next_note", "next_syllable", "next_piano", "vert", "sung_on_head", "sung_on", "piano_sung_on"};

std::pair<NodeKind, NodeKind> endpoints(EdgeKind kind) {
  switch (kind) {
    case EdgeKind::next_note: return {NodeKind::note, NodeKind::note};
    case EdgeKind::next_syllable: return {NodeKind::syllable, NodeKind::syllable};
    case EdgeKind::next_piano:
    case EdgeKind::vert: return {NodeKind::piano, NodeKind::piano};
    case EdgeKind::sung_on_head:
    case EdgeKind::sung_on: return {NodeKind::note, NodeKind::syllable};
    case EdgeKind::piano_sung_on: return {NodeKind::piano, NodeKind::note};
  }
  return {NodeKind::note, NodeKind::note};
}

}  // namespace

std::string_view to_string(NodeKind kind) noexcept { return kNodeKindNames[static_cast<std::size_t>(kind)]; }
std::string_view to_string(EdgeKind kind) noexcept { return kEdgeKindNames[static_cast<std::size_t>(kind)]; }

std::string GraphNode::label() const {
  if (const SyllableUnit* s = syllable()) return s->text;
  const NoteEvent* e = event();
  return e && e->pitch ? pitch_name(*e->pitch) : std::string("rest");
}

std::size_t ScoreGraph::add_node(GraphNode node) {
  const bool syllable_payload = std::holds_alternative<SyllableUnit>(node.payload);
  if (syllable_payload != (node.kind == NodeKind::syllable)) {
    throw BuildError("node " + node.id + " payload does not match its kind");
  }
  const std::size_t index = nodes_.size();
  if (!index_.emplace(node.id, index).second) throw BuildError("duplicate node id " + node.id);
  by_kind_[static_cast<std::size_t>(node.kind)].push_back(index);
  nodes_.push_back(std::move(node));
  out_.emplace_back();
  in_.emplace_back();
  return index;
}

void ScoreGraph::add_edge(std::size_t src, std::size_t dst, EdgeKind kind) {
  if (src >= nodes_.size() || dst >= nodes_.size()) throw BuildError("edge endpoint does not exist");
  const auto [from, to] = endpoints(kind);
  if (nodes_[src].kind != from || nodes_[dst].kind != to) {
    throw BuildError(std::string("edge ") + std::string(to_string(kind)) + " cannot join " + nodes_[src].id + " to " +
                     nodes_[dst].id);
  }
  edges_.push_back({src, dst, kind});
  out_[src][static_cast<std::size_t>(kind)].push_back(dst);
  in_[dst][static_cast<std::size_t>(kind)].push_back(src);
}

void ScoreGraph::remove_edges(EdgeKind kind) {
  std::erase_if(edges_, [kind](const GraphEdge& e) { return e.kind == kind; });
  const auto k = static_cast<std::size_t>(kind);
  for (auto& adjacency : out_) adjacency[k].clear();
  for (auto& adjacency : in_) adjacency[k].clear();
}

std::optional<std::size_t> ScoreGraph::find(std::string_view id) const {
  if (auto it = index_.find(std::string(id)); it != index_.end()) return it->second;
  return std::nullopt;
}

std::size_t ScoreGraph::edge_count(EdgeKind kind) const noexcept {
  return static_cast<std::size_t>(
      std::count_if(edges_.begin(), edges_.end(), [kind](const GraphEdge& e) { return e.kind == kind; }));
}

MelismaScan detect_melismas(std::span<const NoteEvent> voice_events) {
  MelismaScan scan;
  scan.is_head.assign(voice_events.size(), false);
  for (std::size_t i = 0; i < voice_events.size(); ++i) {
    const NoteEvent& event = voice_events[i];
    if (event.lyric) {
      scan.melismas.push_back({*event.lyric, i, {}});
      scan.is_head[i] = true;
    } else if (scan.melismas.empty()) {
      scan.unassigned.push_back(i);
    } else {
      scan.melismas.back().extensions.push_back(i);
    }
  }
  return scan;
}

std::vector<NoteEvent> vocal_line(const Part& voice_part) {
  std::map<int, std::size_t> lyrics_per_voice;
  std::vector<NoteEvent> candidates;
  for (const Measure& measure : voice_part.measures) {
    for (const NoteEvent& event : measure.events) {
      if (event.is_rest() || event.grace || event.chord) continue;
      candidates.push_back(event);
      std::size_t& count = lyrics_per_voice[event.voice];
      if (event.lyric) ++count;
    }
  }
  if (candidates.empty()) return candidates;

  int primary = lyrics_per_voice.begin()->first;
  std::size_t best = 0;
  for (const auto& [voice, count] : lyrics_per_voice) {
    if (count > best) {
      best = count;
      primary = voice;
    }
  }
  std::erase_if(candidates, [primary](const NoteEvent& e) { return e.voice != primary; });
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const NoteEvent& a, const NoteEvent& b) { return a.onset < b.onset; });
  return candidates;
}

std::vector<std::pair<std::size_t, std::size_t>> vert_edges(std::span<const NoteEvent> piano_events,
                                                            const Rational& bucket_width) {
  std::map<Rational, std::vector<std::size_t>> buckets;
  for (std::size_t i = 0; i < piano_events.size(); ++i) {
    const Rational& onset = piano_events[i].onset;
    const Rational key = bucket_width.is_zero() ? onset : Rational((onset / bucket_width).floor());
    buckets[key].push_back(i);
  }
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const auto& [key, members] : buckets) {
    for (std::size_t a : members) {
      for (std::size_t b : members) {
        if (a != b) out.emplace_back(a, b);
      }
    }
  }
  return out;
}

ScoreGraph align_piano_to_voice(ScoreGraph graph, const Rational& tolerance) {
  graph.remove_edges(EdgeKind::piano_sung_on);
  const auto& notes = graph.nodes_of(NodeKind::note);
  std::vector<std::pair<Rational, std::size_t>> by_onset;
  by_onset.reserve(notes.size());
  for (std::size_t n : notes) by_onset.emplace_back(graph.node(n).event()->onset, n);
  std::stable_sort(by_onset.begin(), by_onset.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });

  const std::vector<std::size_t> pianos = graph.nodes_of(NodeKind::piano);
  for (std::size_t p : pianos) {
    const Rational onset = graph.node(p).event()->onset;
    const Rational low = onset - tolerance;
    const Rational high = onset + tolerance;
    auto it = std::lower_bound(by_onset.begin(), by_onset.end(), low,
                               [](const auto& entry, const Rational& value) { return entry.first < value; });
    std::vector<std::size_t> targets;
    for (; it != by_onset.end() && it->first <= high; ++it) targets.push_back(it->second);
    std::sort(targets.begin(), targets.end());
    for (std::size_t n : targets) graph.add_edge(p, n, EdgeKind::piano_sung_on);
  }
  return graph;
}

ScoreGraph build_graph(const ScoreDocument& doc, const GraphConfig& config) {
  const Part* voice = doc.voice_part();
  if (voice == nullptr) throw BuildError("score has no part with role voice");
  if (config.alignment_tolerance < Rational(0) || config.vert_bucket < Rational(0)) {
    throw BuildError("alignment tolerance and vert bucket must be non-negative");
  }

  ScoreGraph graph;
  graph.score_id = doc.source_path;

  const std::vector<NoteEvent> line = vocal_line(*voice);
  const MelismaScan scan = detect_melismas(line);
  graph.unassigned_notes = static_cast<int>(scan.unassigned.size());

  std::vector<std::size_t> note_nodes;
  note_nodes.reserve(line.size());
  for (std::size_t i = 0; i < line.size(); ++i) {
    GraphNode node;
    node.id = "n" + std::to_string(i);
    node.kind = NodeKind::note;
    node.payload = line[i];
    node.is_head = scan.is_head[i];
    note_nodes.push_back(graph.add_node(std::move(node)));
  }
  for (std::size_t i = 1; i < note_nodes.size(); ++i) {
    graph.add_edge(note_nodes[i - 1], note_nodes[i], EdgeKind::next_note);
  }

  std::optional<std::size_t> previous_syllable;
  for (std::size_t s = 0; s < scan.melismas.size(); ++s) {
    const Melisma& melisma = scan.melismas[s];
    GraphNode node;
    node.id = "s" + std::to_string(s);
    node.kind = NodeKind::syllable;
    node.payload = SyllableUnit{melisma.lyric.text, principal_vowel(melisma.lyric.text), static_cast<int>(s),
                                !melisma.extensions.empty(), melisma.lyric.syllabic};
    const std::size_t syllable = graph.add_node(std::move(node));
    if (previous_syllable) graph.add_edge(*previous_syllable, syllable, EdgeKind::next_syllable);
    previous_syllable = syllable;

    graph.add_edge(note_nodes[melisma.head], syllable, EdgeKind::sung_on_head);
    graph.add_edge(note_nodes[melisma.head], syllable, EdgeKind::sung_on);
    for (std::size_t ext : melisma.extensions) graph.add_edge(note_nodes[ext], syllable, EdgeKind::sung_on);
  }

  if (!config.include_piano) return graph;

  struct PianoEvent {
    NoteEvent event;
    int midi;
    std::size_t part;
  };
  std::vector<PianoEvent> piano;
  for (std::size_t p = 0; p < doc.parts.size(); ++p) {
    const Part& part = doc.parts[p];
    if (part.role != PartRole::piano) continue;
    for (const Measure& measure : part.measures) {
      for (const NoteEvent& event : measure.events) {
        if (event.is_rest() || event.grace) continue;
        piano.push_back({event, midi_number(*event.pitch), p});
      }
    }
  }
  std::stable_sort(piano.begin(), piano.end(), [](const PianoEvent& a, const PianoEvent& b) {
    return std::tie(a.event.onset, a.midi, a.part, a.event.staff, a.event.voice) <
           std::tie(b.event.onset, b.midi, b.part, b.event.staff, b.event.voice);
  });

  std::vector<NoteEvent> piano_events;
  std::vector<std::size_t> piano_nodes;
  piano_events.reserve(piano.size());
  for (std::size_t i = 0; i < piano.size(); ++i) {
    GraphNode node;
    node.id = "p" + std::to_string(i);
    node.kind = NodeKind::piano;
    node.payload = piano[i].event;
    piano_events.push_back(piano[i].event);
    piano_nodes.push_back(graph.add_node(std::move(node)));
  }
  for (std::size_t i = 1; i < piano_nodes.size(); ++i) {
    graph.add_edge(piano_nodes[i - 1], piano_nodes[i], EdgeKind::next_piano);
  }
  for (const auto& [a, b] : vert_edges(piano_events, config.vert_bucket)) {
    graph.add_edge(piano_nodes[a], piano_nodes[b], EdgeKind::vert);
  }
  return align_piano_to_voice(std::move(graph), config.alignment_tolerance);
}

std::optional<Rational> graph_density(std::size_t edges, std::size_t nodes) {
  if (nodes < 2) return std::nullopt;
  return Rational(static_cast<std::int64_t>(edges)) /
         Rational(static_cast<std::int64_t>(nodes) * static_cast<std::int64_t>(nodes - 1));
}

GraphSummary melody_lyrics_summary(const ScoreGraph& graph) {
  GraphSummary summary;
  const auto& notes = graph.nodes_of(NodeKind::note);
  const auto& syllables = graph.nodes_of(NodeKind::syllable);
  summary.melody_nodes = notes.size();
  summary.lyric_nodes = syllables.size();
  summary.total_nodes = notes.size() + syllables.size();
  summary.note_to_syllable_edges = graph.edge_count(EdgeKind::sung_on);
  summary.total_edges = graph.edge_count(EdgeKind::next_note) + graph.edge_count(EdgeKind::next_syllable) +
                        summary.note_to_syllable_edges;
  summary.density = graph_density(summary.total_edges, summary.total_nodes);
  summary.unassigned_notes = graph.unassigned_notes;
  if (summary.empty()) return summary;

  auto in_degree = [&graph](std::size_t n) {
    const NodeKind kind = graph.node(n).kind;
    if (kind == NodeKind::note) return graph.in_degree(n, EdgeKind::next_note);
    return graph.in_degree(n, EdgeKind::next_syllable) + graph.in_degree(n, EdgeKind::sung_on);
  };
  auto out_degree = [&graph](std::size_t n) {
    const NodeKind kind = graph.node(n).kind;
    if (kind == NodeKind::note) return graph.out_degree(n, EdgeKind::next_note) + graph.out_degree(n, EdgeKind::sung_on);
    return graph.out_degree(n, EdgeKind::next_syllable);
  };

  std::size_t in_notes = 0, out_notes = 0, in_syl = 0, out_syl = 0;
  for (std::size_t n : notes) {
    in_notes += in_degree(n);
    out_notes += out_degree(n);
  }
  for (std::size_t s : syllables) {
    const std::size_t d = in_degree(s);
    in_syl += d;
    out_syl += out_degree(s);
    ++summary.degree_histogram[d];
    if (d > summary.max_degree.degree || summary.max_degree.node_id.empty()) {
      summary.max_degree = {d, graph.node(s).id, graph.node(s).label()};
    }
  }
  auto mean = [](std::size_t total, std::size_t count) {
    return count == 0 ? Rational(0)
                      : Rational(static_cast<std::int64_t>(total), static_cast<std::int64_t>(count));
  };
  summary.avg_in_notes = mean(in_notes, notes.size());
  summary.avg_out_notes = mean(out_notes, notes.size());
  summary.avg_in_syllables = mean(in_syl, syllables.size());
  summary.avg_out_syllables = mean(out_syl, syllables.size());

  bool first = true;
  for (const auto* kind_nodes : {&notes, &syllables}) {
    for (std::size_t n : *kind_nodes) {
      const std::size_t in = in_degree(n);
      const std::size_t total = in + out_degree(n);
      if (first || in < summary.min_degree) summary.min_degree = in;
      if (first || total > summary.max_total_degree.degree) {
        summary.max_total_degree = {total, graph.node(n).id, graph.node(n).label()};
      }
      first = false;
    }
  }
  return summary;
}

}  // namespace melograph
