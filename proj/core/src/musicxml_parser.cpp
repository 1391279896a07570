#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "melograph/error.h"
#include "melograph/musicxml.h"
#include "xml_tree.h"
#include "zip_archive.h"

namespace melograph {
namespace {

using detail::XmlElement;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::optional<std::int64_t> to_int(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return value;
}

const std::set<std::string_view> kNoteChildren = {
    "pitch", "rest", "duration", "type", "chord", "tie", "voice", "staff", "lyric", "grace", "time-modification"};

class PartReader {
 public:
  explicit PartReader(ParseReport& report) : report_(report) {}

  Part read(const XmlElement& part_element, const std::map<std::string, std::string>& names) {
    Part part;
    part.id = std::string(part_element.attribute("id"));
    if (auto it = names.find(part.id); it != names.end()) part.name = it->second;
    for (const auto& child : part_element.children) {
      if (child->name != "measure") {
        ignore("part/" + child->name);
        continue;
      }
      part.measures.push_back(read_measure(*child, static_cast<int>(part.measures.size()), part.id));
    }
    return part;
  }

 private:
  void ignore(const std::string& path) { ++report_.ignored_elements[path]; }

  Rational ticks(const XmlElement& element, std::string_view what) {
    const auto raw = to_int(element.child_text("duration"));
    if (!raw || *raw < 0) {
      throw StructureError(std::string(what) + " without a valid non-negative <duration>");
    }
    if (divisions_ <= 0) {
      throw StructureError("timed " + std::string(what) + " encountered before <divisions> was declared");
    }
    return Rational(*raw, divisions_);
  }

  void read_attributes(const XmlElement& attributes, const std::string& part_id) {
    for (const auto& child : attributes.children) {
      if (child->name == "divisions") {
        const auto value = to_int(child->text);
        if (!value || *value <= 0) throw StructureError("<divisions> must be a positive integer");
        divisions_ = *value;
      } else if (child->name == "time") {
        Rational beats;
        const XmlElement* beat_type = child->child("beat-type");
        if (child->has_child("senza-misura") || beat_type == nullptr) {
          declared_length_.reset();
          continue;
        }
        // Compound numerators such as "3+2" are summed.
        std::string_view beats_text = child->child_text("beats");
        while (!beats_text.empty()) {
          const auto plus = beats_text.find('+');
          const auto term = to_int(beats_text.substr(0, plus));
          if (!term) throw StructureError("unreadable time signature beats");
          beats += Rational(*term);
          if (plus == std::string_view::npos) break;
          beats_text.remove_prefix(plus + 1);
        }
        const auto type = to_int(beat_type->text);
        if (!type || *type <= 0) throw StructureError("unreadable time signature beat-type");
        declared_length_ = beats * Rational(4, *type);
      } else if (child->name == "transpose") {
        if (flagged_transposing_.insert(part_id).second) {
          ++report_.transposing_parts;
          report_.warnings.push_back("part " + part_id + " declares a transposing instrument; pitches kept as written");
        }
      } else {
        ignore("attributes/" + child->name);
      }
    }
  }

  NoteEvent read_note(const XmlElement& note, Rational& cursor, Rational& last_onset) {
    NoteEvent event;
    event.grace = note.has_child("grace");
    event.chord = note.has_child("chord");
    for (const auto& child : note.children) {
      if (!kNoteChildren.count(child->name)) ignore("note/" + child->name);
    }

    if (const XmlElement* pitch = note.child("pitch")) {
      const auto step = parse_step(trim(pitch->child_text("step")));
      const auto octave = to_int(pitch->child_text("octave"));
      if (!step || !octave) throw StructureError("<pitch> lacks a valid <step>/<octave>");
      Pitch p{*step, 0, static_cast<int>(*octave)};
      if (const XmlElement* alter = pitch->child("alter")) {
        const std::string text(trim(alter->text));
        const double value = std::strtod(text.c_str(), nullptr);
        p.alter = static_cast<int>(std::lround(value));
        if (static_cast<double>(p.alter) != value) {
          report_.warnings.push_back("microtonal alter " + text + " rounded to " + std::to_string(p.alter));
        }
      }
      midi_number(p);  // range check
      event.pitch = p;
    } else if (!note.has_child("rest")) {
      ignore("note/unpitched");
    }

    if (event.grace) {
      event.duration = Rational(0);
    } else {
      event.duration = ticks(note, "note");
    }

    if (const auto voice = to_int(note.child_text("voice"))) event.voice = static_cast<int>(*voice);
    if (const auto staff = to_int(note.child_text("staff"))) event.staff = static_cast<int>(*staff);

    for (const auto& child : note.children) {
      if (child->name != "tie") continue;
      const std::string_view type = child->attribute("type");
      if (type == "start") event.tie_start = true;
      if (type == "stop") event.tie_stop = true;
    }

    if (note.has_child("time-modification")) {
      event.tuplet = true;
      ++report_.tuplet_notes;
    }

    for (const auto& child : note.children) {
      if (child->name != "lyric") continue;
      const std::string_view number = child->attribute("number");
      const auto verse = number.empty() ? std::optional<std::int64_t>(1) : to_int(number);
      if (verse.value_or(0) != 1) {
        ++report_.dropped_verses;
        continue;
      }
      if (event.lyric) continue;
      std::string text;
      for (const auto& part : child->children) {
        if (part->name != "text") continue;
        if (!text.empty()) text += ' ';
        text += trim(part->text);
      }
      if (text.empty()) continue;
      LyricAttachment lyric;
      lyric.text = std::move(text);
      const std::string_view syllabic = trim(child->child_text("syllabic"));
      if (syllabic == "begin") lyric.syllabic = Syllabic::begin;
      else if (syllabic == "middle") lyric.syllabic = Syllabic::middle;
      else if (syllabic == "end") lyric.syllabic = Syllabic::end;
      event.lyric = std::move(lyric);
    }

    if (event.grace) {
      event.onset = event.chord ? last_onset : cursor;
      return event;
    }
    if (event.chord) {
      event.onset = last_onset;
    } else {
      event.onset = cursor;
      last_onset = cursor;
      cursor += event.duration;
    }
    return event;
  }

  Measure read_measure(const XmlElement& element, int index, const std::string& part_id) {
    Measure measure;
    measure.index = index;
    measure.number = std::string(element.attribute("number"));
    measure.start = part_start_;

    Rational cursor;
    Rational last_onset;
    Rational content_end;
    for (const auto& child : element.children) {
      const std::string& name = child->name;
      if (name == "attributes") {
        read_attributes(*child, part_id);
      } else if (name == "note") {
        NoteEvent event = read_note(*child, cursor, last_onset);
        event.measure_index = index;
        if (event.grace) {
          ++report_.grace_notes;
          measure.grace_notes.push_back(std::move(event));
          continue;
        }
        content_end = std::max(content_end, event.end());
        if (event.duration.is_zero()) {
          report_.warnings.push_back("zero-duration note in measure " + measure.number + " of part " + part_id +
                                     " skipped");
          continue;
        }
        measure.events.push_back(std::move(event));
      } else if (name == "backup") {
        cursor -= ticks(*child, "backup");
        if (cursor < Rational(0)) {
          report_.warnings.push_back("backup before measure start in measure " + measure.number + " of part " +
                                     part_id);
          cursor = Rational(0);
        }
      } else if (name == "forward") {
        cursor += ticks(*child, "forward");
        content_end = std::max(content_end, cursor);
      } else {
        ignore("measure/" + name);
      }
    }

    if (declared_length_ && element.attribute("implicit") != "yes") {
      measure.length = *declared_length_;
      if (content_end > measure.length) {
        report_.warnings.push_back("measure " + measure.number + " of part " + part_id +
                                   " overflows its time signature");
        measure.length = content_end;
      }
    } else {
      measure.length = content_end;
    }
    measure.divisions = static_cast<int>(divisions_);

    std::stable_sort(measure.events.begin(), measure.events.end(), [](const NoteEvent& a, const NoteEvent& b) {
      if (a.onset != b.onset) return a.onset < b.onset;
      return a.voice < b.voice;
    });
    for (NoteEvent& event : measure.events) {
      event.metric_position = measure.length.is_zero() ? Rational(0) : event.onset / measure.length;
      event.onset += measure.start;
    }
    for (NoteEvent& grace : measure.grace_notes) {
      grace.metric_position = measure.length.is_zero() ? Rational(0) : grace.onset / measure.length;
      grace.onset += measure.start;
    }
    part_start_ += measure.length;
    return measure;
  }

  ParseReport& report_;
  std::int64_t divisions_ = 0;
  std::optional<Rational> declared_length_;
  Rational part_start_;
  std::set<std::string> flagged_transposing_;
};

}  // namespace

RawScoreFile read_score_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open score file '" + path.string() + "'");
  RawScoreFile file;
  file.bytes.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  file.source_path = path.string();
  return file;
}

ScoreDocument parse_musicxml(const RawScoreFile& file) {
  const std::string unpacked = detail::looks_like_zip(file.bytes) ? detail::extract_mxl_root(file.bytes) : std::string();
  const std::string_view xml = unpacked.empty() ? std::string_view(file.bytes) : std::string_view(unpacked);
  const auto root = detail::parse_xml(xml);

  if (root->name == "score-timewise") {
    throw UnsupportedFormatError("score-timewise layout is not supported; convert to score-partwise");
  }
  if (root->name != "score-partwise") {
    throw UnsupportedFormatError("unsupported root element <" + root->name + ">");
  }

  ScoreDocument doc;
  doc.source_path = file.source_path;
  std::map<std::string, std::string> part_names;
  if (const XmlElement* work = root->child("work")) doc.title = std::string(trim(work->child_text("work-title")));
  if (doc.title.empty()) doc.title = std::string(trim(root->child_text("movement-title")));
  if (const XmlElement* list = root->child("part-list")) {
    for (const auto& entry : list->children) {
      if (entry->name == "score-part") {
        part_names[std::string(entry->attribute("id"))] = std::string(trim(entry->child_text("part-name")));
      }
    }
  }

  for (const auto& child : root->children) {
    if (child->name == "part") {
      PartReader reader(doc.report);
      doc.parts.push_back(reader.read(*child, part_names));
    } else if (child->name != "part-list" && child->name != "work" && child->name != "movement-title") {
      ++doc.report.ignored_elements["score-partwise/" + child->name];
    }
  }
  if (doc.parts.empty()) throw StructureError("score contains no <part>");

  for (const ConservationViolation& v : check_onset_conservation(doc)) {
    ++doc.report.conservation_violations;
    const Part* part = doc.find_part(v.part_id);
    const std::string number = part->measures.at(static_cast<std::size_t>(v.measure_index)).number;
    doc.report.warnings.push_back("part " + v.part_id + " measure " + number + " voice " +
                                  std::to_string(v.voice) + " fills " + v.filled.to_string() + " of " +
                                  v.expected.to_string() + " quarters");
  }
  return doc;
}

std::vector<ConservationViolation> check_onset_conservation(const ScoreDocument& doc) {
  std::vector<ConservationViolation> out;
  for (const Part& part : doc.parts) {
    for (const Measure& measure : part.measures) {
      std::map<int, Rational> filled;
      for (const NoteEvent& event : measure.events) {
        if (!event.chord) filled[event.voice] += event.duration;
      }
      for (const auto& [voice, total] : filled) {
        if (total != measure.length) out.push_back({part.id, measure.index, voice, total, measure.length});
      }
    }
  }
  return out;
}

std::int64_t minimal_divisions(const Measure& measure) {
  std::int64_t lcm = 1;
  auto absorb = [&lcm](const Rational& r) { lcm = std::lcm(lcm, r.den()); };
  for (const NoteEvent& event : measure.events) {
    absorb(event.onset - measure.start);
    absorb(event.duration);
  }
  return lcm;
}

ScoreDocument assign_part_roles(ScoreDocument doc, const std::optional<std::string>& voice_part_override) {
  if (voice_part_override) {
    bool found = false;
    for (Part& part : doc.parts) {
      part.role = part.id == *voice_part_override ? PartRole::voice : PartRole::piano;
      found = found || part.id == *voice_part_override;
    }
    if (!found) throw RoleAssignmentError("voice part override '" + *voice_part_override + "' names no part");
    return doc;
  }

  std::vector<std::size_t> with_lyrics;
  for (std::size_t i = 0; i < doc.parts.size(); ++i) {
    if (doc.parts[i].lyric_count() > 0) with_lyrics.push_back(i);
  }
  if (with_lyrics.empty()) {
    throw RoleAssignmentError("no part carries lyrics; name the voice part explicitly");
  }
  if (with_lyrics.size() > 1) {
    std::string ids;
    for (std::size_t i : with_lyrics) ids += (ids.empty() ? "" : ", ") + doc.parts[i].id;
    throw RoleAssignmentError("lyrics found in several parts (" + ids + "); name the voice part explicitly");
  }
  for (std::size_t i = 0; i < doc.parts.size(); ++i) {
    doc.parts[i].role = i == with_lyrics.front() ? PartRole::voice : PartRole::piano;
  }
  return doc;
}

ScoreDocument merge_ties(ScoreDocument doc) {
  for (Part& part : doc.parts) {
    struct Ref {
      std::size_t measure;
      std::size_t event;
    };
    std::vector<Ref> order;
    for (std::size_t m = 0; m < part.measures.size(); ++m) {
      for (std::size_t e = 0; e < part.measures[m].events.size(); ++e) order.push_back({m, e});
    }
    auto at = [&part](const Ref& r) -> NoteEvent& { return part.measures[r.measure].events[r.event]; };
    std::stable_sort(order.begin(), order.end(),
                     [&at](const Ref& a, const Ref& b) { return at(a).onset < at(b).onset; });

    std::vector<std::vector<bool>> absorbed(part.measures.size());
    for (std::size_t m = 0; m < part.measures.size(); ++m) absorbed[m].assign(part.measures[m].events.size(), false);

    for (std::size_t i = 0; i < order.size(); ++i) {
      const Ref head_ref = order[i];
      if (absorbed[head_ref.measure][head_ref.event]) continue;
      NoteEvent& head = at(head_ref);
      if (head.is_rest()) continue;
      if (head.tie_stop) {
        ++doc.report.dangling_ties;
        doc.report.warnings.push_back("tie-stop without a preceding tie-start at onset " + head.onset.to_string() +
                                      " in part " + part.id + "; note kept unmerged");
      }
      if (!head.tie_start) continue;

      const int midi = midi_number(*head.pitch);
      bool extended = true;
      while (head.tie_start && extended) {
        extended = false;
        const Rational end = head.end();
        for (std::size_t j = i + 1; j < order.size(); ++j) {
          NoteEvent& next = at(order[j]);
          if (next.onset > end) break;
          if (absorbed[order[j].measure][order[j].event] || next.onset != end || !next.tie_stop ||
              next.is_rest() || next.voice != head.voice || midi_number(*next.pitch) != midi) {
            continue;
          }
          absorbed[order[j].measure][order[j].event] = true;
          head.duration += next.duration;
          head.tie_start = next.tie_start;
          ++doc.report.merged_ties;
          extended = true;
          break;
        }
      }
      if (head.tie_start) {
        doc.report.warnings.push_back("tie-start without continuation at onset " + head.end().to_string() +
                                      " in part " + part.id);
        head.tie_start = false;
      }
    }

    for (std::size_t m = 0; m < part.measures.size(); ++m) {
      auto& events = part.measures[m].events;
      std::vector<NoteEvent> kept;
      kept.reserve(events.size());
      for (std::size_t e = 0; e < events.size(); ++e) {
        if (!absorbed[m][e]) kept.push_back(std::move(events[e]));
      }
      events = std::move(kept);
    }
  }
  return doc;
}

}  // namespace melograph
