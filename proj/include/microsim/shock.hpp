#pragma once

#include "microsim/population.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace microsim {

enum class AgeBand { youth_15_24, adult_25_49, elderly_50_64 };

std::string_view to_string(AgeBand b);
AgeBand parse_age_band(std::string_view s);
/// Band of a working-age person; nullopt outside 15..64.
std::optional<AgeBand> age_band_of(int age) noexcept;

struct WageCellKey {
    int nace2{0};
    Sex sex{Sex::male};
    AgeBand age_band{AgeBand::adult_25_49};
    auto operator<=>(const WageCellKey &) const = default;
};

struct SelfEmpCellKey {
    char section{'A'};
    auto operator<=>(const SelfEmpCellKey &) const = default;
};

inline constexpr std::size_t kWageCellCount = 534;
inline constexpr std::size_t kSelfEmpCellCount = 21;

/// Dense index of a wage cell in [0, 534); throws ValidationError for keys
/// outside the universe.
std::size_t wage_cell_index(const WageCellKey &key);
WageCellKey wage_cell_key(std::size_t index);
std::size_t selfemp_cell_index(SelfEmpCellKey key);
SelfEmpCellKey selfemp_cell_key(std::size_t index);

enum class CellProvenance { estimated, suppressed_small_cell, missing_default };
std::string_view to_string(CellProvenance p);

struct CellChange {
    double factor{1.0};
    CellProvenance provenance{CellProvenance::missing_default};
    bool operator==(const CellChange &) const = default;
};

inline constexpr std::int64_t kDefaultSmallCellThreshold = 1000;

/// Relative income-change factor for every wage and self-employment cell.
/// Always complete: a default-constructed table answers 1.0 everywhere.
class CellChangeTable {
  public:
    CellChangeTable() = default;

    /// Every cell estimated at the same factor.
    static CellChangeTable uniform(double wage_factor, double selfemp_factor);

    const CellChange &wage(const WageCellKey &key) const { return wage_[wage_cell_index(key)]; }
    const CellChange &selfemp(SelfEmpCellKey key) const {
        return selfemp_[selfemp_cell_index(key)];
    }
    void set_wage(const WageCellKey &key, CellChange change);
    void set_selfemp(SelfEmpCellKey key, CellChange change);

    std::span<const CellChange> wage_cells() const noexcept { return wage_; }
    std::span<const CellChange> selfemp_cells() const noexcept { return selfemp_; }

    std::int64_t small_cell_threshold() const noexcept { return small_cell_threshold_; }
    void set_small_cell_threshold(std::int64_t t) noexcept { small_cell_threshold_ = t; }

    /// Copy with every self-employment (or wage) cell reset to 1.0.
    CellChangeTable wage_only() const;
    CellChangeTable selfemp_only() const;

    bool operator==(const CellChangeTable &) const = default;

  private:
    std::array<CellChange, kWageCellCount> wage_{};
    std::array<CellChange, kSelfEmpCellCount> selfemp_{};
    std::int64_t small_cell_threshold_{kDefaultSmallCellThreshold};
};

struct CellAggregate {
    Mkd income{0};
    std::int64_t count{0};
    bool operator==(const CellAggregate &) const = default;
};

/// Labor-survey totals per cell for one labeled period.
struct LfsAggregate {
    std::string period;
    int quarters{4};
    std::map<WageCellKey, CellAggregate> wage;
    std::map<SelfEmpCellKey, CellAggregate> selfemp;

    /// Multiplier taking period totals to a full year (4/3 for three quarters).
    double annualization() const noexcept { return 4.0 / quarters; }
    bool operator==(const LfsAggregate &) const = default;
};

/// factor = annualized shocked income / annualized base income per cell.
/// Cells whose base count is below the threshold get 1.0
/// (suppressed_small_cell); cells with zero base income or absent from both
/// periods get 1.0 (missing_default). Throws ValidationError on mismatched
/// cell universes, negative inputs, or a populated cell whose shocked income
/// drops to zero.
CellChangeTable compute_cell_changes(const LfsAggregate &base, const LfsAggregate &shocked,
                                     std::int64_t small_cell_threshold = kDefaultSmallCellThreshold);

/// Which streams apply_shock touches.
struct ShockTargets {
    bool wage{true};
    bool self_employment{true};
};

/// Effective factor 1 + scale * (factor - 1), floored at zero.
double effective_factor(double factor, double scale) noexcept;

/// Applies cell factors to wage and self-employment income from
/// shock_start_month (1-based) onward. Returns a new population; persons
/// without a cell keep their income.
Population apply_shock(const Population &pop, const CellChangeTable &table, int shock_start_month,
                       double scale, ShockTargets targets = {}, unsigned threads = 1);

/// Weighted change (after - before) / before of one income source over
/// months from_month..12.
double aggregate_income_change(const Population &before, const Population &after,
                               IncomeSource source, int from_month = 1);

/// Observed change implied by the survey aggregates themselves: annualized
/// shocked total over base total, minus one, over all cells of the source.
double observed_income_change(const LfsAggregate &base, const LfsAggregate &shocked,
                              IncomeSource source);

/// CSV with columns period,quarters,cell_type,nace,sex,age_band,income,count.
std::vector<LfsAggregate> parse_lfs_aggregates(std::string_view text, std::string source_name);
std::vector<LfsAggregate> load_lfs_aggregates(const std::filesystem::path &path);
const LfsAggregate &find_period(const std::vector<LfsAggregate> &aggregates,
                                std::string_view period);
std::string lfs_to_csv(std::span<const LfsAggregate> aggregates);

/// One row per cell: cell_type,nace,sex,age_band,factor,provenance.
std::string cell_table_to_csv(const CellChangeTable &table);

} // namespace microsim
