#pragma once

#include "microsim/money.hpp"
#include "microsim/population.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace microsim {

/// OECD-modified scale by default. Coefficients are held in hundredths so
/// equivalized incomes stay exact rationals.
struct EquivalenceScale {
    std::int64_t additional_adult_h{50};
    std::int64_t child_h{30};
    /// Members younger than this count as children for the scale.
    int child_age_limit{14};

    /// Builds from decimal coefficients with at most two fractional digits.
    static EquivalenceScale from_decimals(double additional_adult, double child);
};

/// Scale divisor in hundredths (100 for a single adult).
std::int64_t equivalence_divisor(std::span<const Person> members, const EquivalenceScale &scale);

/// annual / divisor as an exact rational; throws ValidationError on an
/// empty household.
Ratio equivalized_income(Mkd annual, std::span<const Person> members, const EquivalenceScale &scale);

/// Annual amounts per equivalent adult.
struct PovertyLines {
    Ratio relative;
    Mkd absolute_extreme_low{0};
    Mkd absolute_upper_middle{0};
};

template <typename T> struct Weighted {
    T value;
    std::int64_t weight;
};

/// Lower weighted median: the smallest value whose cumulative weight reaches
/// half of the total. Throws ValidationError on empty input or non-positive
/// weights.
template <typename T> T weighted_median(std::vector<Weighted<T>> items);

extern template Ratio weighted_median(std::vector<Weighted<Ratio>>);
extern template std::int64_t weighted_median(std::vector<Weighted<std::int64_t>>);
extern template double weighted_median(std::vector<Weighted<double>>);

enum class ChildAgeBand { age_0_5, age_6_14, age_15_17 };
enum class AdultEducation { primary_or_less, secondary, tertiary_plus, no_adults };

std::string_view to_string(ChildAgeBand b);
std::string_view to_string(AdultEducation e);

/// Per-person view of a simulated population, with the household attributes
/// used for disaggregation.
struct PersonRecord {
    PersonId person_id{0};
    std::size_t household_index{0};
    int age{0};
    Sex sex{Sex::male};
    Ratio equivalized;
    std::int64_t weight_h{0};
    bool three_plus_children{false};
    AdultEducation household_education{AdultEducation::no_adults};

    bool is_child() const noexcept { return age < kAdultAge; }
    std::optional<ChildAgeBand> child_age_band() const noexcept;
};

using PersonFilter = std::function<bool(const PersonRecord &)>;

class IncomeTable {
  public:
    /// annual_income[h] is the disposable income of pop.households()[h].
    IncomeTable(const Population &pop, std::span<const Mkd> annual_income,
                const EquivalenceScale &scale);

    std::span<const PersonRecord> persons() const noexcept { return persons_; }
    std::span<const Mkd> household_income() const noexcept { return household_income_; }

    /// Columns consumed by the SIMD kernels.
    std::span<const double> value_num() const noexcept { return value_num_; }
    std::span<const double> value_den() const noexcept { return value_den_; }

  private:
    std::vector<PersonRecord> persons_;
    std::vector<Mkd> household_income_;
    std::vector<double> value_num_;
    std::vector<double> value_den_;
    std::int64_t max_num_{0};
    std::int64_t max_den_{0};
    friend struct RateAccess;
};

/// 60% of the person-weighted lower median of equivalized income.
Ratio relative_poverty_line(const IncomeTable &table);

struct RateResult {
    std::int64_t below_weight_h{0};
    std::int64_t total_weight_h{0};

    /// nullopt when the filter selected nobody.
    std::optional<double> rate() const noexcept;
    /// Weighted number of persons below the line.
    double headcount() const noexcept { return static_cast<double>(below_weight_h) / 100.0; }
    bool operator==(const RateResult &) const = default;
};

/// Weighted share of filtered persons with equivalized income strictly
/// below line.
RateResult poverty_rate(const IncomeTable &table, const Ratio &line, const PersonFilter &filter);

/// round(delta_pp / 100 * child_population); throws on a non-positive population.
std::int64_t headcount_from_pp(double delta_pp, std::int64_t child_population);

enum class Indicator { relative, abs_extreme, abs_upper };
inline constexpr std::array<Indicator, 3> kIndicators{Indicator::relative, Indicator::abs_extreme,
                                                      Indicator::abs_upper};
std::string_view to_string(Indicator i);

struct IndicatorResult {
    RateResult child;
    RateResult all;
    bool operator==(const IndicatorResult &) const = default;
};

struct PovertyReport {
    PovertyLines lines;
    std::array<IndicatorResult, 3> indicators{};

    const IndicatorResult &at(Indicator i) const { return indicators[static_cast<std::size_t>(i)]; }
    Ratio line(Indicator i) const;
};

/// Full three-indicator report; the relative line is derived from the table.
PovertyReport poverty_report(const IncomeTable &table, Mkd absolute_extreme_low,
                             Mkd absolute_upper_middle);

PersonFilter child_filter();

} // namespace microsim
