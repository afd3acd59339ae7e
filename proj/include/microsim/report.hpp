#pragma once

#include "microsim/scenario.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace microsim::report {

// Serializers render one in-memory result into CSV and JSON with stable
// column and key order. Rates carry six decimals; undefined rates are an
// empty CSV field and JSON null. Weighted counts print as persons with two
// decimals.

std::string rate_field(const RateResult &r);
std::string weight_field(std::int64_t hundredths);

std::string decomposition_csv(const DecompositionResult &d);
nlohmann::ordered_json decomposition_json(const DecompositionResult &d);

/// Single scenario (e.g. a --scale run).
std::string scenario_csv(const PovertyReport &r, double shock_scale);
nlohmann::ordered_json scenario_json(const PovertyReport &r, double shock_scale);

std::string band_csv(const UncertaintyBand &b);
nlohmann::ordered_json band_json(const UncertaintyBand &b);

std::string groups_csv(const std::vector<GroupRow> &rows);
nlohmann::ordered_json groups_json(const std::vector<GroupRow> &rows);

std::string tbi_csv(const TbiReport &t);
nlohmann::ordered_json tbi_json(const TbiReport &t);

std::string validation_csv(const ValidationReport &v);
nlohmann::ordered_json validation_json(const ValidationReport &v);

/// Human-readable Table-2 style summary.
std::string decomposition_text(const DecompositionResult &d, std::int64_t child_population);

std::string dump(const nlohmann::ordered_json &j);

/// Points read back from band.csv for plotting.
struct BandSeries {
    std::vector<double> scales;
    std::vector<std::optional<double>> rates;
    std::vector<std::int64_t> headcounts;
};
BandSeries parse_band_csv(std::string_view text, std::string source_name);

/// Relative child rates per group read back from groups.csv.
struct GroupSeries {
    std::string dimension;
    std::vector<std::string> groups;
    std::vector<std::optional<double>> pre;
    std::vector<std::optional<double>> post;
};
/// One series per dimension, in file order.
std::vector<GroupSeries> parse_groups_csv(std::string_view text, std::string source_name);

} // namespace microsim::report
