#include "melograph/corpus.h"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <mutex>
#include <random>
#include <set>
#include <thread>
#include <tuple>

#include "melograph/error.h"
#include "melograph/report_json.h"

namespace melograph {
namespace {

using nlohmann::json;

void check_unique(const std::vector<std::string>& labels, const std::string& name) {
  std::set<std::string> seen;
  for (const auto& l : labels) {
    if (!seen.insert(l).second) throw AggregationError("matrix '" + name + "' repeats label '" + l + "'");
  }
}

std::vector<std::string> merged_labels(std::span<const DistributionMatrix> matrices,
                                       std::vector<std::string> DistributionMatrix::*labels,
                                       std::span<const std::string> preferred) {
  const auto& first = matrices.front().*labels;
  const bool identical = std::all_of(matrices.begin(), matrices.end(),
                                     [&](const DistributionMatrix& m) { return m.*labels == first; });
  if (identical) return first;

  std::set<std::string> all;
  for (const auto& m : matrices) all.insert((m.*labels).begin(), (m.*labels).end());
  std::vector<std::string> out;
  for (const auto& p : preferred) {
    if (all.erase(p)) out.push_back(p);
  }
  out.insert(out.end(), all.begin(), all.end());
  return out;
}

std::vector<std::string> vowel_labels() {
  std::vector<std::string> out;
  for (Vowel v : kVowelClasses) out.emplace_back(to_string(v));
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << text;
}

// Uniform draw in [0, bound) without modulo bias.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t draw;
  do {
    draw = rng();
  } while (draw >= limit);
  return draw % bound;
}

}  // namespace

DistributionMatrix aggregate_matrices(std::span<const DistributionMatrix> matrices,
                                      std::span<const std::string> row_order,
                                      std::span<const std::string> col_order) {
  if (matrices.empty()) return {};
  for (const auto& m : matrices) {
    if (m.name != matrices.front().name) {
      throw AggregationError("cannot aggregate '" + m.name + "' with '" + matrices.front().name + "'");
    }
    check_unique(m.row_labels, m.name);
    check_unique(m.col_labels, m.name);
    if (m.counts.size() != m.row_labels.size()) throw AggregationError("matrix '" + m.name + "' is malformed");
  }
  DistributionMatrix out =
      DistributionMatrix::zeros(matrices.front().name, merged_labels(matrices, &DistributionMatrix::row_labels, row_order),
                                merged_labels(matrices, &DistributionMatrix::col_labels, col_order));
  for (const auto& m : matrices) {
    for (std::size_t r = 0; r < m.row_labels.size(); ++r) {
      const std::size_t row = *out.row_index(m.row_labels[r]);
      if (m.counts[r].size() != m.col_labels.size()) throw AggregationError("matrix '" + m.name + "' is malformed");
      for (std::size_t c = 0; c < m.col_labels.size(); ++c) {
        out.counts[row][*out.col_index(m.col_labels[c])] += m.counts[r][c];
      }
    }
  }
  return out;
}

std::vector<BigramContourRecord> aggregate_bigrams(std::span<const std::vector<BigramContourRecord>> lists) {
  std::map<std::tuple<std::string, std::string, ContourClass>, std::int64_t> counts;
  for (const auto& list : lists) {
    for (const auto& r : list) counts[{r.first, r.second, r.contour}] += r.count;
  }
  std::vector<BigramContourRecord> out;
  for (const auto& [key, count] : counts) out.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), count});
  sort_bigram_records(out);
  return out;
}

std::map<std::string, std::string> load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open manifest '" + path.string() + "'");
  json parsed;
  try {
    parsed = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("manifest '" + path.string() + "' is not valid JSON: " + e.what());
  }
  if (!parsed.is_object()) throw InputError("manifest must be a JSON object {filename: variant_id}");
  std::map<std::string, std::string> out;
  for (const auto& [file, id] : parsed.items()) {
    if (!id.is_string()) throw InputError("manifest entry for '" + file + "' is not a string");
    out[file] = id.get<std::string>();
  }
  return out;
}

std::vector<std::filesystem::path> list_score_files(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> out;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const auto ext = entry.path().extension().string();
    if (ext == ".xml" || ext == ".musicxml" || ext == ".mxl") out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

void recompute_aggregate(CorpusReport& corpus) {
  const std::set<std::string> chosen(corpus.subset.begin(), corpus.subset.end());
  std::vector<DistributionMatrix> bands, transitions;
  std::vector<std::vector<BigramContourRecord>> bigrams;
  std::map<Vowel, std::vector<Rational>> pooled;
  for (Vowel v : kVowelClasses) pooled[v];
  for (const auto& variant : corpus.variants) {
    if (!chosen.count(variant.variant_id)) continue;
    bands.push_back(variant.pitch_duration);
    transitions.push_back(variant.vowel_transitions);
    bigrams.push_back(variant.bigrams);
    for (const auto& [vowel, samples] : variant.vowel_samples) {
      pooled[vowel].insert(pooled[vowel].end(), samples.begin(), samples.end());
    }
  }
  corpus.empty_subset = chosen.empty();
  const auto vowels = vowel_labels();
  corpus.aggregated.pitch_duration = aggregate_matrices(bands);
  corpus.aggregated.pitch_duration.name = "pitch_duration";
  corpus.aggregated.vowel_transitions = aggregate_matrices(transitions, vowels, vowels);
  corpus.aggregated.vowel_transitions.name = "vowel_transitions";
  corpus.aggregated.bigrams = aggregate_bigrams(bigrams);
  corpus.aggregated.vowel_stats = vowel_duration_stats(pooled);
}

CorpusReport run_corpus(std::span<const std::filesystem::path> paths, const RunConfig& config,
                        const std::map<std::string, std::string>& manifest) {
  config.validate();
  if (paths.empty()) throw CorpusError("no score files to analyse");

  std::vector<std::string> ids;
  std::set<std::string> seen;
  for (const auto& path : paths) {
    const auto it = manifest.find(path.filename().string());
    std::string id = it != manifest.end() ? it->second : path.stem().string();
    if (!seen.insert(id).second) throw CorpusError("duplicate variant id '" + id + "'");
    ids.push_back(std::move(id));
  }

  std::vector<std::optional<VariantReport>> results(paths.size());
  std::vector<std::optional<CorpusFailure>> failures(paths.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < paths.size(); i = next++) {
      try {
        results[i] = analyze_score(read_score_file(paths[i]), config, ids[i]);
      } catch (const std::exception& e) {
        failures[i] = CorpusFailure{paths[i].string(), e.what()};
      }
    }
  };
  const std::size_t threads =
      std::max<std::size_t>(1, std::min<std::size_t>(paths.size(), std::thread::hardware_concurrency()));
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }

  CorpusReport corpus;
  corpus.config = config;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    if (results[i]) corpus.variants.push_back(std::move(*results[i]));
    if (failures[i]) corpus.failures.push_back(std::move(*failures[i]));
  }
  if (corpus.variants.empty()) {
    std::string detail = corpus.failures.empty() ? "" : ": " + corpus.failures.front().message;
    throw CorpusError("every score in the corpus failed to analyse" + detail);
  }
  std::sort(corpus.variants.begin(), corpus.variants.end(),
            [](const VariantReport& a, const VariantReport& b) { return a.variant_id < b.variant_id; });
  for (const auto& v : corpus.variants) corpus.subset.push_back(v.variant_id);
  recompute_aggregate(corpus);
  return corpus;
}

CorpusReport select_subset(CorpusReport corpus, const SubsetSelector& selector, std::uint64_t seed) {
  std::vector<std::string> all;
  for (const auto& v : corpus.variants) all.push_back(v.variant_id);
  std::sort(all.begin(), all.end());

  std::vector<std::string> chosen;
  if (const auto* ids = std::get_if<std::vector<std::string>>(&selector)) {
    for (const auto& id : *ids) {
      if (!std::binary_search(all.begin(), all.end(), id)) throw SelectionError("unknown variant id '" + id + "'");
      if (std::find(chosen.begin(), chosen.end(), id) == chosen.end()) chosen.push_back(id);
    }
  } else {
    const std::size_t k = std::get<RandomSubset>(selector).k;
    if (k > all.size()) {
      throw SelectionError("cannot draw " + std::to_string(k) + " variants from a corpus of " +
                           std::to_string(all.size()));
    }
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(bounded(rng, all.size() - i));
      std::swap(all[i], all[j]);
    }
    chosen.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k));
  }
  std::sort(chosen.begin(), chosen.end());
  corpus.subset = std::move(chosen);
  recompute_aggregate(corpus);
  return corpus;
}

std::filesystem::path write_run_directory(const CorpusReport& corpus, const std::filesystem::path& out_root,
                                          std::string_view timestamp) {
  const std::string hash = config_hash(corpus.config);
  const auto run_dir = out_root / ("run-" + std::string(timestamp) + "-" + hash);
  std::filesystem::create_directories(run_dir / "variants");
  std::filesystem::create_directories(run_dir / "csv");

  json variants = json::array();
  for (const auto& v : corpus.variants) {
    write_text(run_dir / "variants" / (v.variant_id + ".json"), to_json(v, corpus.config).dump(2) + "\n");
    write_text(run_dir / "csv" / (v.variant_id + "_bands.csv"), v.pitch_duration.to_csv());
    write_text(run_dir / "csv" / (v.variant_id + "_transitions.csv"), v.vowel_transitions.to_csv());
    write_text(run_dir / "csv" / (v.variant_id + "_vowels.csv"), boxplots_to_csv(v.vowel_stats));
    std::vector<BigramContourRecord> top = v.bigrams;
    if (top.size() > static_cast<std::size_t>(corpus.config.top_k_bigrams)) top.resize(static_cast<std::size_t>(corpus.config.top_k_bigrams));
    write_text(run_dir / "csv" / (v.variant_id + "_bigrams.csv"), bigrams_to_csv(top));
    variants.push_back(v.variant_id);
  }

  const ArtifactMetadata meta{"aggregate", hash};
  std::vector<BigramContourRecord> top = corpus.aggregated.bigrams;
  if (top.size() > static_cast<std::size_t>(corpus.config.top_k_bigrams)) top.resize(static_cast<std::size_t>(corpus.config.top_k_bigrams));
  json failures = json::array();
  for (const auto& f : corpus.failures) failures.push_back({{"path", f.path}, {"error", f.message}});
  const json doc = {{"config", config_to_json(corpus.config)},
                    {"config_hash", hash},
                    {"variants", variants},
                    {"failures", failures},
                    {"subset", corpus.subset},
                    {"empty_subset", corpus.empty_subset},
                    {"aggregated",
                     {{"bands", to_json(corpus.aggregated.pitch_duration, meta)},
                      {"transitions", to_json(corpus.aggregated.vowel_transitions, meta)},
                      {"bigrams", to_json(top, meta)},
                      {"vowels", to_json(corpus.aggregated.vowel_stats, meta)}}}};
  write_text(run_dir / "corpus.json", doc.dump(2) + "\n");
  write_text(run_dir / "csv" / "aggregate_bands.csv", corpus.aggregated.pitch_duration.to_csv());
  write_text(run_dir / "csv" / "aggregate_transitions.csv", corpus.aggregated.vowel_transitions.to_csv());
  write_text(run_dir / "csv" / "aggregate_bigrams.csv", bigrams_to_csv(top));
  write_text(run_dir / "csv" / "aggregate_vowels.csv", boxplots_to_csv(corpus.aggregated.vowel_stats));
  return run_dir;
}

}  // namespace melograph
