#pragma once

#include "microsim/report.hpp"

#include <optional>
#include <string>

namespace microsim::svg {

// Static, deterministic SVG documents: fixed canvas, coordinates printed
// with two decimals, no timestamps or random ids.

/// Relative child rate per shock scale, one labeled marker per point.
/// Points with an undefined rate are skipped. nullopt when no point has a rate.
std::optional<std::string> band_chart(const report::BandSeries &band);

/// Grouped bars (pre and post) of the relative child rate per group.
/// nullopt when every group rate is undefined.
std::optional<std::string> group_chart(const report::GroupSeries &series);

} // namespace microsim::svg
