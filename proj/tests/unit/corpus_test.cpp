#include "melograph/corpus.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <random>

#include "melograph/error.h"
#include "melograph/report_json.h"
#include "score_builder.h"

namespace melograph {
namespace {

namespace fs = std::filesystem;
using testing::fixture;

class TempDir {
 public:
  explicit TempDir(const std::string& name) : path_(fs::temp_directory_path() / ("melograph_" + name)) {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

const std::map<std::string, std::string>& manifest() {
  static const auto m = load_manifest(fixture("corpus/manifest.json"));
  return m;
}

const CorpusReport& fixture_corpus() {
  static const CorpusReport report = [] {
    const auto files = list_score_files(fixture("corpus"));
    return run_corpus(files, RunConfig{}, manifest());
  }();
  return report;
}

TEST(AggregateMatrices, SingleCell) {
  DistributionMatrix a = DistributionMatrix::zeros("m", {"r"}, {"c"});
  DistributionMatrix b = a;
  a.counts[0][0] = 1;
  b.counts[0][0] = 2;
  const std::vector<DistributionMatrix> ms = {a, b};
  EXPECT_EQ(aggregate_matrices(ms).counts, (std::vector<std::vector<std::int64_t>>{{3}}));
}

TEST(AggregateMatrices, AlignsLabelsByName) {
  DistributionMatrix a = DistributionMatrix::zeros("t", {"a", "i"}, {"a", "i"});
  DistributionMatrix b = DistributionMatrix::zeros("t", {"e", "a"}, {"o"});
  a.counts[0][1] = 2;
  b.counts[1][0] = 5;
  const std::vector<DistributionMatrix> ms = {a, b};
  const std::vector<std::string> order = {"a", "e", "i", "o", "u"};
  const DistributionMatrix sum = aggregate_matrices(ms, order, order);
  EXPECT_EQ(sum.row_labels, (std::vector<std::string>{"a", "e", "i"}));
  EXPECT_EQ(sum.col_labels, (std::vector<std::string>{"a", "i", "o"}));
  EXPECT_EQ(sum.at("a", "i"), 2);
  EXPECT_EQ(sum.at("a", "o"), 5);
  EXPECT_EQ(sum.total(), 7);
}

TEST(AggregateMatrices, Errors) {
  const DistributionMatrix a = DistributionMatrix::zeros("x", {"r"}, {"c"});
  const DistributionMatrix b = DistributionMatrix::zeros("y", {"r"}, {"c"});
  const DistributionMatrix dup = DistributionMatrix::zeros("x", {"r", "r"}, {"c"});
  EXPECT_THROW(aggregate_matrices(std::vector<DistributionMatrix>{a, b}), AggregationError);
  EXPECT_THROW(aggregate_matrices(std::vector<DistributionMatrix>{a, dup}), AggregationError);
  EXPECT_TRUE(aggregate_matrices(std::vector<DistributionMatrix>{}).empty());
}

std::vector<std::string> random_labels(std::mt19937_64& rng, const std::vector<std::string>& pool) {
  std::vector<std::string> out;
  for (const auto& l : pool) {
    if (testing::uniform(rng, 0, 2) > 0) out.push_back(l);
  }
  if (out.empty()) out.push_back(pool[0]);
  return out;
}

TEST(AggregateMatricesProperty, LinearityPermutationAndTotals) {
  std::mt19937_64 rng(2024);
  const std::vector<std::string> pool = {"a", "e", "i", "o", "u", "io", "ia"};
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<DistributionMatrix> ms;
    const int count = testing::uniform(rng, 1, 8);
    std::int64_t total = 0;
    for (int i = 0; i < count; ++i) {
      ms.push_back(testing::random_matrix(rng, "v", random_labels(rng, pool), random_labels(rng, pool)));
      total += ms.back().total();
    }
    const DistributionMatrix whole = aggregate_matrices(ms, pool, pool);
    ASSERT_EQ(whole.total(), total);

    const auto split = static_cast<std::ptrdiff_t>(testing::uniform(rng, 0, count));
    const std::vector<DistributionMatrix> left(ms.begin(), ms.begin() + split);
    const std::vector<DistributionMatrix> right(ms.begin() + split, ms.end());
    std::vector<DistributionMatrix> parts;
    if (!left.empty()) parts.push_back(aggregate_matrices(left, pool, pool));
    if (!right.empty()) parts.push_back(aggregate_matrices(right, pool, pool));
    ASSERT_EQ(aggregate_matrices(parts, pool, pool), whole);

    std::shuffle(ms.begin(), ms.end(), rng);
    ASSERT_EQ(aggregate_matrices(ms, pool, pool), whole);

    for (const auto& r : whole.row_labels) {
      for (const auto& c : whole.col_labels) {
        std::int64_t cell = 0;
        for (const auto& m : ms) cell += m.at(r, c);
        ASSERT_EQ(whole.at(r, c), cell);
      }
    }
  }
}

TEST(AggregateBigrams, UnionOfKeys) {
  const std::vector<std::vector<BigramContourRecord>> lists = {
      {{"la", "mi", ContourClass::same, 2}, {"mi", "re", ContourClass::up_step, 1}},
      {{"la", "mi", ContourClass::same, 3}, {"la", "mi", ContourClass::up_leap, 1}}};
  const auto out = aggregate_bigrams(lists);
  ASSERT_EQ(out.size(), 3u);
  EXPECT_EQ(out[0], (BigramContourRecord{"la", "mi", ContourClass::same, 5}));
}

TEST(RunCorpus, FixtureCorpus) {
  const CorpusReport& c = fixture_corpus();
  ASSERT_EQ(c.variants.size(), 4u);
  EXPECT_EQ(c.variants[0].variant_id, "A");
  EXPECT_EQ(c.variants[3].variant_id, "II.1A");
  EXPECT_TRUE(c.failures.empty());
  EXPECT_EQ(c.subset, (std::vector<std::string>{"A", "B", "C", "II.1A"}));
  std::int64_t heads = 0;
  for (const auto& v : c.variants) heads += v.pitch_duration.total();
  EXPECT_EQ(c.aggregated.pitch_duration.total(), heads);
}

TEST(RunCorpus, ThreeVariantAggregate) {
  const CorpusReport c = select_subset(fixture_corpus(), std::vector<std::string>{"A", "B", "C"}, 0);
  EXPECT_EQ(c.variants[0].pitch_duration.at("mid", "short"), 31);
  EXPECT_EQ(c.variants[1].pitch_duration.at("mid", "short"), 24);
  EXPECT_EQ(c.variants[2].pitch_duration.at("mid", "short"), 58);
  EXPECT_EQ(c.variants[1].pitch_duration.at("high", "short"), 14);
  EXPECT_EQ(c.aggregated.pitch_duration.at("mid", "short"), 113);
  EXPECT_EQ(c.aggregated.pitch_duration.at("mid", "medium"), 34);
}

TEST(RunCorpus, MatchesSingleScorePipeline) {
  for (const auto& v : fixture_corpus().variants) {
    const VariantReport single = analyze_score(read_score_file(v.source_path), RunConfig{}, v.variant_id);
    EXPECT_EQ(to_json(single, RunConfig{}), to_json(v, RunConfig{})) << v.variant_id;
  }
}

TEST(RunCorpus, SingleFileAggregateIsIdentity) {
  const std::vector<fs::path> files = {fixture("corpus/variant_b.xml")};
  const CorpusReport c = run_corpus(files, RunConfig{});
  EXPECT_EQ(c.variants[0].variant_id, "variant_b");
  EXPECT_EQ(c.aggregated.pitch_duration, c.variants[0].pitch_duration);
  EXPECT_EQ(c.aggregated.vowel_transitions, c.variants[0].vowel_transitions);
  EXPECT_EQ(c.aggregated.vowel_stats, c.variants[0].vowel_stats);
}

TEST(RunCorpus, FailuresAreIsolated) {
  const std::vector<fs::path> files = {fixture("corpus/variant_a.xml"), fixture("errors/corrupt.xml")};
  const CorpusReport c = run_corpus(files, RunConfig{});
  EXPECT_EQ(c.variants.size(), 1u);
  ASSERT_EQ(c.failures.size(), 1u);
  EXPECT_NE(c.failures[0].path.find("corrupt.xml"), std::string::npos);
}

TEST(RunCorpus, AllFailingIsAnError) {
  const std::vector<fs::path> files = {fixture("errors/corrupt.xml"), fixture("errors/timewise.xml")};
  EXPECT_THROW(run_corpus(files, RunConfig{}), CorpusError);
}

TEST(RunCorpus, DuplicateIdsRejected) {
  const std::vector<fs::path> files = {fixture("corpus/variant_a.xml"), fixture("corpus/variant_b.xml")};
  EXPECT_THROW(run_corpus(files, RunConfig{}, {{"variant_a.xml", "X"}, {"variant_b.xml", "X"}}), CorpusError);
}

TEST(SelectSubset, SeededRandomIsDeterministic) {
  const CorpusReport a = select_subset(fixture_corpus(), RandomSubset{3}, 1);
  const CorpusReport b = select_subset(fixture_corpus(), RandomSubset{3}, 1);
  EXPECT_EQ(a.subset, b.subset);
  EXPECT_EQ(a.subset.size(), 3u);
  EXPECT_TRUE(std::is_sorted(a.subset.begin(), a.subset.end()));
  EXPECT_EQ(a.aggregated.pitch_duration, b.aggregated.pitch_duration);

  std::set<std::vector<std::string>> seen;
  for (std::uint64_t seed = 0; seed < 32; ++seed) seen.insert(select_subset(fixture_corpus(), RandomSubset{2}, seed).subset);
  EXPECT_GT(seen.size(), 1u);
}

TEST(SelectSubset, SingleIdEqualsItsMatrices) {
  const CorpusReport c = select_subset(fixture_corpus(), std::vector<std::string>{"C"}, 0);
  EXPECT_EQ(c.aggregated.pitch_duration, c.variants[2].pitch_duration);
}

TEST(SelectSubset, EmptyAndInvalid) {
  const CorpusReport empty = select_subset(fixture_corpus(), RandomSubset{0}, 5);
  EXPECT_TRUE(empty.empty_subset);
  EXPECT_TRUE(empty.subset.empty());
  EXPECT_EQ(empty.aggregated.pitch_duration.total(), 0);
  EXPECT_THROW(select_subset(fixture_corpus(), std::vector<std::string>{"Z"}, 0), SelectionError);
  EXPECT_THROW(select_subset(fixture_corpus(), RandomSubset{9}, 0), SelectionError);
}

TEST(RunDirectory, Layout) {
  TempDir out("run_dir");
  const CorpusReport c = select_subset(fixture_corpus(), std::vector<std::string>{"A", "B", "C"}, 0);
  const fs::path run = write_run_directory(c, out.path(), "20260101T000000Z");
  EXPECT_EQ(run.filename().string(), "run-20260101T000000Z-" + config_hash(c.config));
  EXPECT_TRUE(fs::exists(run / "corpus.json"));
  EXPECT_TRUE(fs::exists(run / "variants" / "II.1A.json"));
  for (const char* name : {"bands", "transitions", "vowels", "bigrams"}) {
    EXPECT_TRUE(fs::exists(run / "csv" / (std::string("aggregate_") + name + ".csv"))) << name;
    EXPECT_TRUE(fs::exists(run / "csv" / (std::string("A_") + name + ".csv"))) << name;
  }
  std::ifstream in(run / "csv" / "aggregate_bands.csv");
  std::stringstream text;
  text << in.rdbuf();
  EXPECT_EQ(text.str(), c.aggregated.pitch_duration.to_csv());
}

TEST(Manifest, FileListingAndManifest) {
  const auto files = list_score_files(fixture("corpus"));
  ASSERT_EQ(files.size(), 4u);
  EXPECT_EQ(files[0].filename(), "ii1a.xml");
  EXPECT_EQ(manifest().at("ii1a.xml"), "II.1A");
  EXPECT_THROW(load_manifest(fixture("errors/corrupt.xml")), InputError);
}

}  // namespace
}  // namespace melograph
