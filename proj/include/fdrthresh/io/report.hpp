#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "fdrthresh/estimator.hpp"
#include "fdrthresh/risk_engine.hpp"
#include "fdrthresh/simulation.hpp"

namespace fdrthresh::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kCsvSchemaVersion = "1";

/// Shortest round-trip decimal; +inf prints as "inf", NaN as "nan".
std::string format_real(double v);

/// Reals with +inf mapped to the string "inf" and NaN to null.
Json real_json(double v);

/// Rows of preformatted cells under a "# schema: fdrthresh.<name>.v1" comment.
struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::string render() const;
};

void write_text(const std::string& path, const std::string& text);

Json to_json(const McEstimate& est);
Json to_json(const SelectorTrace& trace);
Json to_json(const EstimateReport& report);
Json to_json(const RegretReport& report);
Json to_json(const CommonMeanReport& report);
Json to_json(const MinimaxReport& report);
Json to_json(const ConcentrationReport& report);
Json to_json(const FdrControlReport& report);
Json to_json(const SelectorTailReport& report);

/// Columns lambda,value,functional.
Table risk_curve_table(const RiskCurve& curve);
Table estimate_table(const EstimateReport& report);
Table regret_table(const std::vector<RegretReport>& reports);
Table common_mean_table(const CommonMeanReport& report);
Table minimax_table(const std::vector<MinimaxReport>& reports);
Table concentration_table(const std::vector<ConcentrationReport>& reports);

/// Header block shared by JSON documents: tool version, seed and fingerprint.
Json provenance(std::uint64_t seed, const std::string& config_fingerprint);

}  // namespace fdrthresh::io
