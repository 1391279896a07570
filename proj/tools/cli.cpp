#include "cli.h"

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include "melograph/config.h"
#include "melograph/corpus.h"
#include "melograph/error.h"
#include "melograph/graph_export.h"
#include "melograph/melotext.h"
#include "melograph/musicxml.h"
#include "melograph/pipeline.h"
#include "melograph/report_json.h"
#include "melograph/score_graph.h"

namespace melograph::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

const std::vector<std::string> kAnalytics = {"bigrams", "bands", "vowels", "transitions"};

// Flags that override the configuration file. Empty means "not given".
struct ConfigFlags {
  std::string config_path;
  std::optional<std::string> voice_part;
  bool no_merge_ties = false;
  std::optional<std::string> tolerance;
  std::optional<std::string> vert_bucket;
  std::optional<std::int64_t> min_count;
  std::optional<std::int64_t> top_k;
  std::optional<std::uint64_t> seed;
  std::optional<int> mid_min;
  std::optional<int> high_min;
  std::optional<std::string> short_max;
  std::optional<std::string> medium_max;
  bool include_extensions = false;
};

struct Options {
  ConfigFlags flags;
  std::string format = "text";
  std::string input;
  std::string out;
  bool stats = false;
  std::optional<std::string> export_format;
  std::string annotations;
  std::vector<std::string> which;
  std::string artifact_format = "csv";
  std::optional<std::size_t> subset;
  std::vector<std::string> ids;
  std::string manifest;
};

void add_config_flags(CLI::App& cmd, ConfigFlags& f) {
  cmd.add_option("--config", f.config_path, "JSON config file (default: $MELOGRAPH_CONFIG)");
  cmd.add_option("--voice-part", f.voice_part, "Part id to treat as the voice");
  cmd.add_flag("--no-merge-ties", f.no_merge_ties, "Keep tied notes as separate events");
  cmd.add_option("--tolerance", f.tolerance, "Piano/voice onset alignment tolerance in quarters (e.g. 1/128)");
  cmd.add_option("--vert-bucket", f.vert_bucket, "Onset bucket width for vert edges in quarters (0 = exact)");
  cmd.add_option("--min-count", f.min_count, "Zero vowel-transition cells below this count");
  cmd.add_option("--top-k", f.top_k, "Number of syllabic bigrams to report");
  cmd.add_option("--seed", f.seed, "Seed for random subset selection");
  cmd.add_option("--pitch-mid-min", f.mid_min, "Lowest MIDI number of the mid band");
  cmd.add_option("--pitch-high-min", f.high_min, "Lowest MIDI number of the high band");
  cmd.add_option("--short-max", f.short_max, "Longest short duration in quarters");
  cmd.add_option("--medium-max", f.medium_max, "Longest medium duration in quarters");
  cmd.add_flag("--include-extensions", f.include_extensions, "Also bin melisma extension notes in the band matrix");
}

Rational rational_flag(const std::string& text, const char* name) {
  try {
    return Rational::parse(text);
  } catch (const RangeError& e) {
    throw UsageError(std::string("--") + name + ": " + e.what());
  }
}

// Precedence: flags > config file > defaults.
RunConfig resolve_config(const ConfigFlags& f) {
  RunConfig config;
  std::string path = f.config_path;
  if (path.empty()) {
    if (const char* env = std::getenv(kConfigEnvVar); env != nullptr) path = env;
  }
  if (!path.empty()) config = load_config_file(path, config);
  if (f.voice_part) config.voice_part_override = f.voice_part;
  if (f.no_merge_ties) config.merge_ties = false;
  if (f.tolerance) config.alignment_tolerance = rational_flag(*f.tolerance, "tolerance");
  if (f.vert_bucket) config.vert_bucket = rational_flag(*f.vert_bucket, "vert-bucket");
  if (f.min_count) config.min_transition_count = *f.min_count;
  if (f.top_k) config.top_k_bigrams = *f.top_k;
  if (f.seed) config.seed = *f.seed;
  if (f.mid_min) config.bands.mid_min_midi = *f.mid_min;
  if (f.high_min) config.bands.high_min_midi = *f.high_min;
  if (f.short_max) config.bands.short_max = rational_flag(*f.short_max, "short-max");
  if (f.medium_max) config.bands.medium_max = rational_flag(*f.medium_max, "medium-max");
  if (f.include_extensions) config.include_extensions = true;
  config.validate();
  return config;
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out << text;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y%m%dT%H%M%SZ");
  return os.str();
}

int cmd_inspect(const Options& o, std::ostream& out) {
  const RunConfig config = resolve_config(o.flags);
  ScoreDocument doc = parse_musicxml(read_score_file(o.input));
  std::string role_note;
  try {
    doc = assign_part_roles(std::move(doc), config.voice_part_override);
  } catch (const RoleAssignmentError& e) {
    role_note = e.what();
  }
  json report = inspect_json(doc);
  report["roles_assigned"] = role_note.empty();
  if (!role_note.empty()) report["role_error"] = role_note;

  if (o.format == "json") {
    out << report.dump(2) << '\n';
    return kExitOk;
  }
  out << "file: " << doc.source_path << '\n';
  if (!doc.title.empty()) out << "title: " << doc.title << '\n';
  out << "parts: " << doc.parts.size() << '\n';
  for (const auto& part : report["parts"]) {
    out << "  " << part["id"].get<std::string>() << " (" << part["name"].get<std::string>() << ")"
        << " role=" << (role_note.empty() ? part["role"].get<std::string>() : "unassigned")
        << " measures=" << part["measures"] << " events=" << part["events"] << " notes=" << part["notes"]
        << " rests=" << part["rests"] << " lyrics=" << part["lyrics"] << '\n';
  }
  if (!role_note.empty()) out << "role assignment: " << role_note << '\n';
  out << "grace notes: " << doc.report.grace_notes << '\n';
  out << "tuplet notes: " << doc.report.tuplet_notes << '\n';
  int ignored = 0;
  for (const auto& [name, count] : doc.report.ignored_elements) ignored += count;
  out << "ignored elements: " << ignored << '\n';
  out << "warnings: " << doc.report.warnings.size() << '\n';
  for (const auto& w : doc.report.warnings) out << "  " << w << '\n';
  return kExitOk;
}

void print_summary_text(const GraphSummary& s, std::ostream& out) {
  auto row = [&out](const std::string& name, const std::string& value) {
    out << std::left << std::setw(32) << name << value << '\n';
  };
  row("Melody Nodes", std::to_string(s.melody_nodes));
  row("Lyric Nodes", std::to_string(s.lyric_nodes));
  row("Total Nodes", std::to_string(s.total_nodes));
  row("Edges notes -> syllables", std::to_string(s.note_to_syllable_edges));
  row("Total Edges", std::to_string(s.total_edges));
  row("Graph Density", s.density ? to_fixed(*s.density, 4) : "undefined");
  row("Average In-degree (notes)", to_fixed(s.avg_in_notes, 2));
  row("Average Out-degree (notes)", to_fixed(s.avg_out_notes, 2));
  row("Average In-degree (syllables)", to_fixed(s.avg_in_syllables, 2));
  row("Average Out-degree (syllables)", to_fixed(s.avg_out_syllables, 2));
  row("Max Degree", std::to_string(s.max_degree.degree) +
                        (s.max_degree.node_id.empty() ? "" : " (" + s.max_degree.node_id + " '" + s.max_degree.label + "')"));
  row("Min Degree", std::to_string(s.min_degree));
}

int cmd_graph(const Options& o, std::ostream& out) {
  const RunConfig config = resolve_config(o.flags);
  const ExportFormat format = o.export_format ? parse_export_format(*o.export_format) : ExportFormat::dot;
  const ScoreDocument doc = prepare_document(read_score_file(o.input), config);
  ScoreGraph graph = build_graph(doc, config.graph_config());
  if (!o.annotations.empty()) {
    std::ifstream in(o.annotations);
    if (!in) throw InputError("cannot open annotation file '" + o.annotations + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    graph = annotate(std::move(graph), parse_annotations(buffer.str()));
  }

  const bool show_stats = o.stats || !o.export_format;
  if (o.export_format) {
    const std::string text = export_graph(graph, format);
    if (o.out.empty()) {
      out << text;
    } else {
      write_file(o.out, text);
    }
  }
  if (show_stats) {
    const GraphSummary summary = melody_lyrics_summary(graph);
    if (o.format == "json") {
      json j = to_json(summary);
      j["metadata"] = to_json(ArtifactMetadata{doc.source_path, config_hash(config)});
      out << j.dump(2) << '\n';
    } else {
      print_summary_text(summary, out);
    }
  }
  return kExitOk;
}

int cmd_analyze(const Options& o, std::ostream& out) {
  std::set<std::string> selected;
  for (const auto& w : o.which) {
    if (w == "all") {
      selected.insert(kAnalytics.begin(), kAnalytics.end());
    } else if (std::find(kAnalytics.begin(), kAnalytics.end(), w) != kAnalytics.end()) {
      selected.insert(w);
    } else {
      throw UsageError("unknown analytic '" + w + "' (expected bigrams, bands, vowels, transitions or all)");
    }
  }
  if (selected.empty()) selected.insert(kAnalytics.begin(), kAnalytics.end());
  if (o.artifact_format != "csv" && o.artifact_format != "json") {
    throw UsageError("--artifact-format must be csv or json");
  }

  const RunConfig config = resolve_config(o.flags);
  const fs::path input(o.input);
  const VariantReport report = analyze_score(read_score_file(input), config, input.stem().string());
  const ArtifactMetadata meta{report.source_path, config_hash(config)};
  const fs::path out_dir = o.out.empty() ? fs::path(".") : fs::path(o.out);
  const bool as_json = o.artifact_format == "json";

  std::vector<BigramContourRecord> top = report.bigrams;
  if (top.size() > static_cast<std::size_t>(config.top_k_bigrams)) top.resize(static_cast<std::size_t>(config.top_k_bigrams));

  std::vector<fs::path> written;
  for (const auto& name : kAnalytics) {
    if (!selected.count(name)) continue;
    std::string text;
    if (name == "bigrams") text = as_json ? to_json(top, meta).dump(2) + "\n" : bigrams_to_csv(top);
    if (name == "bands") text = as_json ? to_json(report.pitch_duration, meta).dump(2) + "\n" : report.pitch_duration.to_csv();
    if (name == "vowels") text = as_json ? to_json(report.vowel_stats, meta).dump(2) + "\n" : boxplots_to_csv(report.vowel_stats);
    if (name == "transitions") {
      text = as_json ? to_json(report.vowel_transitions, meta).dump(2) + "\n" : report.vowel_transitions.to_csv();
    }
    const fs::path path = out_dir / (report.variant_id + "_" + name + (as_json ? ".json" : ".csv"));
    write_file(path, text);
    written.push_back(path);
  }

  if (o.format == "json") {
    json j = {{"artifacts", json::array()}, {"config_hash", meta.config_hash}};
    for (const auto& p : written) j["artifacts"].push_back(p.string());
    out << j.dump(2) << '\n';
  } else {
    for (const auto& p : written) out << p.string() << '\n';
  }
  return kExitOk;
}

int cmd_corpus(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.subset && !o.ids.empty()) throw UsageError("--subset and --ids are mutually exclusive");
  const fs::path dir(o.input);
  if (!fs::is_directory(dir)) throw UsageError("'" + o.input + "' is not a directory");
  const auto files = list_score_files(dir);
  if (files.empty()) throw UsageError("no .xml, .musicxml or .mxl files in '" + o.input + "'");

  const RunConfig config = resolve_config(o.flags);
  const auto manifest = o.manifest.empty() ? std::map<std::string, std::string>{} : load_manifest(o.manifest);
  CorpusReport corpus = run_corpus(files, config, manifest);
  if (o.subset) corpus = select_subset(std::move(corpus), RandomSubset{*o.subset}, config.seed);
  if (!o.ids.empty()) corpus = select_subset(std::move(corpus), o.ids, config.seed);

  for (const auto& f : corpus.failures) err << "warning: " << f.path << ": " << f.message << '\n';
  const fs::path run_dir = write_run_directory(corpus, o.out.empty() ? fs::path(".") : fs::path(o.out), utc_timestamp());

  if (o.format == "json") {
    json j = {{"run_directory", run_dir.string()},
              {"variants", corpus.variants.size()},
              {"failures", corpus.failures.size()},
              {"subset", corpus.subset},
              {"empty_subset", corpus.empty_subset}};
    out << j.dump(2) << '\n';
  } else {
    out << "run directory: " << run_dir.string() << '\n';
    out << "variants: " << corpus.variants.size() << " (failed: " << corpus.failures.size() << ")\n";
    out << "subset:";
    for (const auto& id : corpus.subset) out << ' ' << id;
    out << (corpus.empty_subset ? " (empty)" : "") << '\n';
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"melograph: melody-lyrics-accompaniment graphs and statistics for MusicXML vocal scores", "melograph"};
  app.require_subcommand(1);
  Options o;

  auto add_format = [&o](CLI::App* cmd) {
    cmd->add_option("--format", o.format, "Console output encoding")->check(CLI::IsMember({"text", "json"}));
  };

  CLI::App* inspect = app.add_subcommand("inspect", "Print part roles, counts and parse warnings");
  inspect->add_option("file", o.input, "MusicXML (.xml, .musicxml, .mxl) file")->required();
  add_format(inspect);
  add_config_flags(*inspect, o.flags);

  CLI::App* graph = app.add_subcommand("graph", "Build the score graph; print statistics and/or export it");
  graph->add_option("file", o.input, "MusicXML file")->required();
  graph->add_flag("--stats", o.stats, "Print melody-lyrics graph statistics");
  graph->add_option("--export", o.export_format, "Export format: dot, graphml or json");
  graph->add_option("--out", o.out, "Export destination (default: stdout)");
  graph->add_option("--annotations", o.annotations, "JSON sidecar {node id: tonal function}");
  add_format(graph);
  add_config_flags(*graph, o.flags);

  CLI::App* analyze = app.add_subcommand("analyze", "Write melodic-textual distributions");
  analyze->add_option("file", o.input, "MusicXML file")->required();
  analyze->add_option("--which", o.which, "bigrams, bands, vowels, transitions or all")->delimiter(',');
  analyze->add_option("--out", o.out, "Output directory (default: .)");
  analyze->add_option("--artifact-format", o.artifact_format, "csv or json");
  add_format(analyze);
  add_config_flags(*analyze, o.flags);

  CLI::App* corpus = app.add_subcommand("corpus", "Analyse a directory of variants and aggregate");
  corpus->add_option("dir", o.input, "Directory of score files")->required();
  corpus->add_option("--subset", o.subset, "Aggregate over K randomly chosen variants");
  corpus->add_option("--ids", o.ids, "Aggregate over these variant ids")->delimiter(',');
  corpus->add_option("--manifest", o.manifest, "JSON {filename: variant id}");
  corpus->add_option("--out", o.out, "Directory receiving the run directory (default: .)");
  add_format(corpus);
  add_config_flags(*corpus, o.flags);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (inspect->parsed()) return cmd_inspect(o, out);
    if (graph->parsed()) return cmd_graph(o, out);
    if (analyze->parsed()) return cmd_analyze(o, out);
    if (corpus->parsed()) return cmd_corpus(o, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const RangeError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const SelectionError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const CorpusError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const AnalysisError& e) {
    err << "error: " << e.what() << '\n';
    return kExitAnalysis;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitAnalysis;
  }
  return kExitUsage;
}

}  // namespace melograph::cli
