// JSON encodings of reports and analytics artifacts.
//
// Artifacts carry a "metadata" object {score_id, config_hash}. Rational
// quantities appear twice: as a decimal with explicit precision and as an
// exact "n/d" string under an "_exact" key.

#ifndef MELOGRAPH_REPORT_JSON_H_
#define MELOGRAPH_REPORT_JSON_H_

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "melograph/boxplot.h"
#include "melograph/distribution.h"
#include "melograph/melotext.h"
#include "melograph/pipeline.h"
#include "melograph/score.h"
#include "melograph/score_graph.h"

namespace melograph {

struct ArtifactMetadata {
  std::string score_id;
  std::string config_hash;
};

nlohmann::json to_json(const ArtifactMetadata& meta);
nlohmann::json to_json(const ParseReport& report);
nlohmann::json to_json(const GraphSummary& summary);
nlohmann::json to_json(const DistributionMatrix& matrix, const ArtifactMetadata& meta);
nlohmann::json to_json(const std::vector<BigramContourRecord>& records, const ArtifactMetadata& meta);
nlohmann::json to_json(const std::vector<BoxplotStats>& stats, const ArtifactMetadata& meta);
nlohmann::json to_json(const VariantReport& report, const RunConfig& config);

/// Parse report plus per-part role/measure/event counts.
nlohmann::json inspect_json(const ScoreDocument& doc);

/// Reverse of to_json(DistributionMatrix); used to read stored artifacts.
DistributionMatrix matrix_from_json(const nlohmann::json& j);

}  // namespace melograph

#endif  // MELOGRAPH_REPORT_JSON_H_
