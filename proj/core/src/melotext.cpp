#include "melograph/melotext.h"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <tuple>

namespace melograph {
namespace {

std::string lower_ascii(std::string text) {
  for (char& c : text) {
    if (static_cast<unsigned char>(c) < 0x80) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return text;
}

std::optional<std::size_t> head_of(const ScoreGraph& graph, std::size_t syllable) {
  const auto& heads = graph.predecessors(syllable, EdgeKind::sung_on_head);
  if (heads.empty()) return std::nullopt;
  return heads.front();
}

int midi_of(const ScoreGraph& graph, std::size_t note) { return midi_number(*graph.node(note).event()->pitch); }

std::string csv_text(std::string_view text) {
  if (text.find_first_of(",\"\n") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string optional_fixed(const std::optional<Rational>& value) { return value ? to_fixed(*value, 4) : ""; }

}  // namespace

void sort_bigram_records(std::vector<BigramContourRecord>& records) {
  std::sort(records.begin(), records.end(), [](const BigramContourRecord& a, const BigramContourRecord& b) {
    if (a.count != b.count) return a.count > b.count;
    return std::tie(a.first, a.second, a.contour) < std::tie(b.first, b.second, b.contour);
  });
}

std::vector<BigramContourRecord> bigram_contour_counts(const ScoreGraph& graph) {
  std::map<std::tuple<std::string, std::string, ContourClass>, std::int64_t> counts;
  for (std::size_t s : graph.nodes_of(NodeKind::syllable)) {
    const auto head = head_of(graph, s);
    if (!head) continue;
    for (std::size_t next : graph.successors(s, EdgeKind::next_syllable)) {
      const auto next_head = head_of(graph, next);
      if (!next_head) continue;
      const ContourClass contour = classify_contour(interval(midi_of(graph, *head), midi_of(graph, *next_head)).delta);
      ++counts[{lower_ascii(graph.node(s).syllable()->text), lower_ascii(graph.node(next).syllable()->text), contour}];
    }
  }
  std::vector<BigramContourRecord> records;
  records.reserve(counts.size());
  for (const auto& [key, count] : counts) {
    records.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), count});
  }
  sort_bigram_records(records);
  return records;
}

std::vector<BigramContourRecord> syllabic_bigram_contours(const ScoreGraph& graph, std::size_t top_k) {
  auto records = bigram_contour_counts(graph);
  if (records.size() > top_k) records.resize(top_k);
  return records;
}

DistributionMatrix pitch_duration_matrix(const ScoreGraph& graph, const BandThresholds& bands,
                                         bool include_extensions) {
  std::vector<std::string> rows, cols;
  for (PitchBand b : kPitchBands) rows.emplace_back(to_string(b));
  for (DurationBand b : kDurationBands) cols.emplace_back(to_string(b));
  DistributionMatrix matrix = DistributionMatrix::zeros("pitch_duration", std::move(rows), std::move(cols));

  for (std::size_t n : graph.nodes_of(NodeKind::note)) {
    const GraphNode& node = graph.node(n);
    const bool sung = graph.out_degree(n, EdgeKind::sung_on) > 0;
    if (!(node.is_head || (include_extensions && sung))) continue;
    const NoteEvent& event = *node.event();
    const auto r = static_cast<std::size_t>(pitch_band(midi_number(*event.pitch), bands));
    const auto c = static_cast<std::size_t>(duration_band(event.duration, bands));
    ++matrix.counts[r][c];
  }
  return matrix;
}

std::map<Vowel, std::vector<Rational>> vowel_duration_samples(const ScoreGraph& graph) {
  std::map<Vowel, std::vector<Rational>> samples;
  for (Vowel v : kVowelClasses) samples[v];
  for (std::size_t s : graph.nodes_of(NodeKind::syllable)) {
    Rational total;
    for (std::size_t n : graph.predecessors(s, EdgeKind::sung_on)) total += graph.node(n).event()->duration;
    samples[graph.node(s).syllable()->principal_vowel].push_back(total);
  }
  return samples;
}

std::vector<BoxplotStats> vowel_duration_stats(const std::map<Vowel, std::vector<Rational>>& samples) {
  std::vector<BoxplotStats> out;
  out.reserve(kVowelClasses.size());
  for (Vowel v : kVowelClasses) {
    const auto it = samples.find(v);
    out.push_back(compute_boxplot(std::string(to_string(v)), it == samples.end() ? std::vector<Rational>{} : it->second));
  }
  return out;
}

std::vector<BoxplotStats> vowel_duration_stats(const ScoreGraph& graph) {
  return vowel_duration_stats(vowel_duration_samples(graph));
}

void apply_min_count(DistributionMatrix& matrix, std::int64_t min_count) {
  if (min_count <= 0) return;
  for (auto& row : matrix.counts) {
    for (std::int64_t& v : row) {
      if (v < min_count) v = 0;
    }
  }
}

DistributionMatrix vowel_transition_matrix(const ScoreGraph& graph, std::int64_t min_count) {
  std::array<bool, kVowelClasses.size()> seen{};
  for (std::size_t s : graph.nodes_of(NodeKind::syllable)) {
    seen[static_cast<std::size_t>(graph.node(s).syllable()->principal_vowel)] = true;
  }
  std::vector<std::string> labels;
  std::array<std::size_t, kVowelClasses.size()> slot{};
  for (Vowel v : kVowelClasses) {
    if (!seen[static_cast<std::size_t>(v)]) continue;
    slot[static_cast<std::size_t>(v)] = labels.size();
    labels.emplace_back(to_string(v));
  }
  DistributionMatrix matrix = DistributionMatrix::zeros("vowel_transitions", labels, labels);
  for (std::size_t s : graph.nodes_of(NodeKind::syllable)) {
    const auto from = static_cast<std::size_t>(graph.node(s).syllable()->principal_vowel);
    for (std::size_t next : graph.successors(s, EdgeKind::next_syllable)) {
      const auto to = static_cast<std::size_t>(graph.node(next).syllable()->principal_vowel);
      ++matrix.counts[slot[from]][slot[to]];
    }
  }
  apply_min_count(matrix, min_count);
  return matrix;
}

std::string bigrams_to_csv(const std::vector<BigramContourRecord>& records) {
  std::ostringstream os;
  os << "first,second,contour,count\n";
  for (const auto& r : records) {
    os << csv_text(r.first) << ',' << csv_text(r.second) << ',' << to_string(r.contour) << ',' << r.count << '\n';
  }
  return os.str();
}

std::string boxplots_to_csv(const std::vector<BoxplotStats>& stats) {
  std::ostringstream os;
  os << "vowel,n,median,q1,q3,iqr,whisker_low,whisker_high,outliers\n";
  for (const auto& s : stats) {
    os << csv_text(s.label) << ',' << s.n << ',' << optional_fixed(s.median) << ',' << optional_fixed(s.q1) << ','
       << optional_fixed(s.q3) << ',' << optional_fixed(s.iqr) << ',' << optional_fixed(s.whisker_low) << ','
       << optional_fixed(s.whisker_high) << ',';
    for (std::size_t i = 0; i < s.outliers.size(); ++i) os << (i ? ";" : "") << to_fixed(s.outliers[i], 4);
    os << '\n';
  }
  return os.str();
}

}  // namespace melograph
