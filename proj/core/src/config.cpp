#include "melograph/config.h"

#include <cstdio>
#include <fstream>
#include <set>

#include "melograph/error.h"

namespace melograph {

using nlohmann::json;

void RunConfig::validate() const {
  bands.validate();
  if (top_k_bigrams < 1) throw UsageError("top_k_bigrams must be at least 1");
  if (alignment_tolerance < Rational(0)) throw UsageError("alignment tolerance must be non-negative");
  if (vert_bucket < Rational(0)) throw UsageError("vert bucket must be non-negative");
  if (min_transition_count < 0) throw UsageError("min_transition_count must be non-negative");
}

json config_to_json(const RunConfig& config) {
  json j;
  j["voice_part"] = config.voice_part_override ? json(*config.voice_part_override) : json(nullptr);
  j["merge_ties"] = config.merge_ties;
  j["alignment_tolerance"] = config.alignment_tolerance.to_string();
  j["vert_bucket"] = config.vert_bucket.to_string();
  j["min_transition_count"] = config.min_transition_count;
  j["top_k_bigrams"] = config.top_k_bigrams;
  j["include_extensions"] = config.include_extensions;
  j["seed"] = config.seed;
  j["bands"] = {{"mid_min_midi", config.bands.mid_min_midi},
                {"high_min_midi", config.bands.high_min_midi},
                {"short_max", config.bands.short_max.to_string()},
                {"medium_max", config.bands.medium_max.to_string()}};
  return j;
}

namespace {

Rational rational_field(const json& value, const char* key) {
  try {
    if (value.is_string()) return Rational::parse(value.get<std::string>());
    if (value.is_number_integer()) return Rational(value.get<std::int64_t>());
    if (value.is_number_float()) return Rational::parse(value.dump());
  } catch (const RangeError& e) {
    throw UsageError(std::string("config key '") + key + "': " + e.what());
  }
  throw UsageError(std::string("config key '") + key + "' must be a number or a rational string");
}

template <typename T>
T typed(const json& value, const char* key) {
  try {
    return value.get<T>();
  } catch (const json::exception&) {
    throw UsageError(std::string("config key '") + key + "' has the wrong type");
  }
}

}  // namespace

RunConfig config_from_json(const json& overrides, RunConfig base) {
  if (!overrides.is_object()) throw UsageError("configuration must be a JSON object");
  static const std::set<std::string> known = {"voice_part",   "merge_ties",    "alignment_tolerance",
                                              "vert_bucket",  "min_transition_count", "top_k_bigrams",
                                              "include_extensions", "seed",    "bands"};
  for (const auto& [key, value] : overrides.items()) {
    if (!known.count(key)) throw UsageError("unknown config key '" + key + "'");
  }
  if (auto it = overrides.find("voice_part"); it != overrides.end()) {
    base.voice_part_override = it->is_null() ? std::nullopt : std::optional(typed<std::string>(*it, "voice_part"));
  }
  if (auto it = overrides.find("merge_ties"); it != overrides.end()) base.merge_ties = typed<bool>(*it, "merge_ties");
  if (auto it = overrides.find("alignment_tolerance"); it != overrides.end()) {
    base.alignment_tolerance = rational_field(*it, "alignment_tolerance");
  }
  if (auto it = overrides.find("vert_bucket"); it != overrides.end()) base.vert_bucket = rational_field(*it, "vert_bucket");
  if (auto it = overrides.find("min_transition_count"); it != overrides.end()) {
    base.min_transition_count = typed<std::int64_t>(*it, "min_transition_count");
  }
  if (auto it = overrides.find("top_k_bigrams"); it != overrides.end()) {
    base.top_k_bigrams = typed<std::int64_t>(*it, "top_k_bigrams");
  }
  if (auto it = overrides.find("include_extensions"); it != overrides.end()) {
    base.include_extensions = typed<bool>(*it, "include_extensions");
  }
  if (auto it = overrides.find("seed"); it != overrides.end()) base.seed = typed<std::uint64_t>(*it, "seed");
  if (auto it = overrides.find("bands"); it != overrides.end()) {
    if (!it->is_object()) throw UsageError("config key 'bands' must be an object");
    for (const auto& [key, value] : it->items()) {
      if (key == "mid_min_midi") base.bands.mid_min_midi = typed<int>(value, "bands.mid_min_midi");
      else if (key == "high_min_midi") base.bands.high_min_midi = typed<int>(value, "bands.high_min_midi");
      else if (key == "short_max") base.bands.short_max = rational_field(value, "bands.short_max");
      else if (key == "medium_max") base.bands.medium_max = rational_field(value, "bands.medium_max");
      else throw UsageError("unknown config key 'bands." + key + "'");
    }
  }
  return base;
}

RunConfig load_config_file(const std::filesystem::path& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file '" + path.string() + "'");
  json parsed;
  try {
    parsed = json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError("config file '" + path.string() + "' is not valid JSON: " + e.what());
  }
  return config_from_json(parsed, std::move(base));
}

std::string config_hash(const RunConfig& config) {
  const std::string canonical = config_to_json(config).dump();
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  char buffer[17];
  std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(hash));
  return buffer;
}

}  // namespace melograph
