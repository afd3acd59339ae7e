#pragma once

#include "microsim/policy.hpp"
#include "microsim/poverty.hpp"
#include "microsim/scenario.hpp"
#include "microsim/synthetic.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace microsim {

struct CalibrationSettings {
    bool enabled{true};
    double target_child_poverty{0.278};
    int max_iterations{40};
    double tolerance{0.005};
};

struct LfsSettings {
    std::filesystem::path file;
    std::string base_period{"2019"};
    std::string shocked_period{"2020"};
    std::int64_t small_cell_threshold{kDefaultSmallCellThreshold};
};

/// Everything a CLI run needs. Relative paths are resolved against the
/// directory of the config file.
struct RunConfig {
    std::uint64_t seed{20200501};
    unsigned threads{1};

    /// When both are set the population is loaded instead of generated.
    std::optional<std::filesystem::path> persons_file;
    std::optional<std::filesystem::path> households_file;
    SynthConfig synthetic;
    CalibrationSettings calibration;
    LfsSettings lfs;

    ScenarioSpec scenario{FactorSwitches::all_four(), 1.0, 3};
    bool columns_on_shocked_income{false};
    std::vector<double> band_scales{0.8, 1.0, 1.2};
    std::vector<GroupDimension> dimensions{kGroupDimensions.begin(), kGroupDimensions.end()};

    EngineSettings engine;

    SourceChanges tolerance_pp{5.0, 2.0};
    /// Overrides the changes implied by the LFS aggregates.
    std::optional<SourceChanges> observed;

    PolicyParameters params;

    /// Cross-field checks; throws ValidationError.
    void validate() const;
};

/// Parses a config object. Unknown keys anywhere are rejected. Referenced
/// input files must exist.
RunConfig config_from_json(const nlohmann::json &j, const std::filesystem::path &base_dir);
RunConfig load_config(const std::filesystem::path &file);

/// Effective configuration echoed into manifests. Paths are printed as
/// given after resolution; the thread count is left out so outputs do not
/// depend on it.
nlohmann::ordered_json effective_config(const RunConfig &c);

/// 64-bit FNV-1a, rendered as 16 hex digits.
std::string fnv1a_hex(std::string_view data);

} // namespace microsim
