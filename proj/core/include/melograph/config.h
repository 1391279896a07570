// Run configuration shared by the pipeline, corpus runs and the CLI.

#ifndef MELOGRAPH_CONFIG_H_
#define MELOGRAPH_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>

#include "melograph/bands.h"
#include "melograph/rational.h"
#include "melograph/score_graph.h"

namespace melograph {

struct RunConfig {
  std::optional<std::string> voice_part_override;
  bool merge_ties = true;
  Rational alignment_tolerance;
  Rational vert_bucket;
  std::int64_t min_transition_count = 0;
  std::int64_t top_k_bigrams = 15;
  BandThresholds bands;
  bool include_extensions = false;  // bin melisma extensions in the band matrix
  std::uint64_t seed = 0;

  /// Throws UsageError on non-increasing bands, top_k < 1 or negative
  /// tolerances.
  void validate() const;

  GraphConfig graph_config() const { return {alignment_tolerance, vert_bucket, true}; }
};

nlohmann::json config_to_json(const RunConfig& config);

/// Overlays the keys present in `overrides` onto `base`. Unknown keys raise
/// UsageError so typos do not pass silently.
RunConfig config_from_json(const nlohmann::json& overrides, RunConfig base = {});

RunConfig load_config_file(const std::filesystem::path& path, RunConfig base = {});

/// 16 hex digits of FNV-1a over the canonical JSON form.
std::string config_hash(const RunConfig& config);

/// Environment variable naming a default config file.
inline constexpr const char* kConfigEnvVar = "MELOGRAPH_CONFIG";

}  // namespace melograph

#endif  // MELOGRAPH_CONFIG_H_
