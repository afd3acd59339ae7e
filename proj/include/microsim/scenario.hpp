#pragma once

#include "microsim/policy.hpp"
#include "microsim/population.hpp"
#include "microsim/poverty.hpp"
#include "microsim/rules.hpp"
#include "microsim/shock.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace microsim {

struct FactorSwitches {
    bool wage_shock{false};
    bool selfemp_shock{false};
    bool gma_relaxation{false};
    bool one_offs{false};
    bool tbi{false};

    static FactorSwitches all_four() { return {true, true, true, true, false}; }
    /// Comma-separated names, e.g. "wage_shock,one_offs"; "all" selects the
    /// four decomposition factors, "none" nothing.
    static FactorSwitches parse(std::string_view list);
    std::string to_string() const;
    /// Number of enabled decomposition factors (TBI excluded).
    int decomposition_count() const noexcept;
    bool operator==(const FactorSwitches &) const = default;
};

struct ScenarioSpec {
    FactorSwitches factors;
    double shock_scale{1.0};
    /// First month (1-based) of the simulated year hit by the shock.
    int shock_start_month{3};

    void validate() const;
};

struct EngineSettings {
    EquivalenceScale scale;
    Mkd absolute_extreme_low{36000};
    Mkd absolute_upper_middle{72000};
    std::int64_t child_population{407865};
    unsigned threads{1};
    /// Run decomposition columns 4 and 5 on shocked incomes instead of the
    /// pre-shock profile.
    bool columns_on_shocked_income{false};
};

/// Runs the monthly fiscal rules for every household of current. baseline
/// supplies the pre-shock incomes for months before January and must share
/// current's household structure. Results are in household order.
std::vector<HouseholdFiscalResult> simulate_households(const Population &current,
                                                       const Population &baseline,
                                                       const PolicyParameters &params,
                                                       const PipelineFlags &flags,
                                                       const TbiStatistics *tbi_stats,
                                                       unsigned threads);

std::vector<Mkd> annual_incomes(const std::vector<HouseholdFiscalResult> &results);

/// Relative child poverty of the no-shock, no-one-off baseline.
double baseline_child_poverty(const Population &pop, const PolicyParameters &params,
                              const EquivalenceScale &scale, unsigned threads);

/// Weighted median of household disposable income per member.
Ratio median_per_capita_income(const Population &pop, std::span<const Mkd> annual_income);

struct ScenarioOutcome {
    PovertyReport report;
    std::vector<HouseholdFiscalResult> households;
    IncomeTable table;
};

inline constexpr std::size_t kDecompositionColumns = 6;

struct DecompositionResult {
    /// Columns 1..6: baseline, wage-only, selfemp-only, GMA-only,
    /// one-offs-only, combined. Disabled factors leave their column empty.
    std::array<std::optional<PovertyReport>, kDecompositionColumns> columns;
    bool columns_on_shocked_income{false};
};

std::string_view decomposition_column_name(std::size_t column);

struct BandPoint {
    double scale{1.0};
    PovertyReport report;
    /// Relative child rate change against the baseline, in percentage points.
    double delta_pp{0.0};
    std::int64_t headcount{0};
};

struct UncertaintyBand {
    double baseline_rate{0.0};
    std::vector<BandPoint> points;
};

enum class GroupDimension { sex, child_age_band, three_plus_children, adult_education };
inline constexpr std::array<GroupDimension, 4> kGroupDimensions{
    GroupDimension::sex, GroupDimension::child_age_band, GroupDimension::three_plus_children,
    GroupDimension::adult_education};
std::string_view to_string(GroupDimension d);
GroupDimension parse_group_dimension(std::string_view s);

/// Child poverty of one group, before and after the scenario.
struct GroupRow {
    GroupDimension dimension{GroupDimension::sex};
    std::string group;
    Indicator indicator{Indicator::relative};
    RateResult pre;
    RateResult post;
};

/// Group values of a dimension in reporting order.
std::vector<std::string> group_values(GroupDimension d);
/// Group value of a child record.
std::string group_of(const PersonRecord &p, GroupDimension d);

struct ValidationRow {
    IncomeSource source{IncomeSource::wage};
    double simulated{0.0};
    double observed{0.0};
    double gap_pp{0.0};
    double tolerance_pp{0.0};
    bool pass{false};
};

struct ValidationReport {
    std::vector<ValidationRow> rows;
    bool pass() const noexcept;
};

/// Per-source relative changes (fractions) for wage and self-employment.
struct SourceChanges {
    double wage{0.0};
    double self_employment{0.0};
};

/// Passes a source iff |simulated - observed| <= tolerance (in percentage points).
ValidationReport validate_against_observed(const SourceChanges &simulated,
                                           const SourceChanges &observed,
                                           const SourceChanges &tolerance_pp);

struct TbiReport {
    Mkd monthly_transfer{0};
    std::int64_t recipient_households{0};
    /// Weighted recipient households, in hundredths.
    std::int64_t recipient_weight_h{0};
    /// Sum of weight_h * annual award over recipients (hundredths of MKD).
    std::int64_t total_cost_h{0};
    double child_household_share_of_funds{0.0};
    double child_household_population_share{0.0};
    PovertyReport without_tbi;
    PovertyReport with_tbi;
};

/// Orchestrates scenarios over an immutable baseline.
class ScenarioEngine {
  public:
    ScenarioEngine(Population baseline, CellChangeTable cells, PolicyParameters params,
                   EngineSettings settings);

    const Population &baseline() const noexcept { return baseline_; }
    const PolicyParameters &params() const noexcept { return params_; }
    const EngineSettings &settings() const noexcept { return settings_; }
    const TbiStatistics &tbi_statistics() const noexcept { return tbi_stats_; }
    const PovertyReport &baseline_report() const noexcept { return baseline_report_; }

    /// Shocks, fiscal rules, one-offs, TBI and metrics in this order. Errors
    /// are rethrown as StageError naming the stage.
    ScenarioOutcome run(const ScenarioSpec &spec) const;

    /// Shocked population of a spec (the baseline when no shock is enabled).
    Population shocked_population(const ScenarioSpec &spec) const;

    DecompositionResult decompose(const ScenarioSpec &spec) const;
    UncertaintyBand uncertainty_band(const ScenarioSpec &spec,
                                     const std::vector<double> &scales = {0.8, 1.0, 1.2}) const;
    std::vector<GroupRow> disaggregate(const ScenarioSpec &spec,
                                       const std::vector<GroupDimension> &dimensions) const;
    /// Combined scenario of spec with and without the TBI.
    TbiReport tbi_whatif(const ScenarioSpec &spec) const;
    /// Wage and self-employment changes produced by the full shock.
    SourceChanges simulated_changes(const ScenarioSpec &spec) const;

  private:
    Population baseline_;
    CellChangeTable cells_;
    PolicyParameters params_;
    EngineSettings settings_;
    TbiStatistics tbi_stats_;
    PovertyReport baseline_report_;
};

} // namespace microsim
