#pragma once

#include "microsim/money.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace microsim {

using PersonId = std::int64_t;
using HouseholdId = std::int64_t;

enum class Sex { male, female };

enum class LaborStatus {
    employee,
    self_employed,
    unemployed_active,
    unemployed_passive,
    pensioner,
    student,
    child,
    inactive,
};

enum class Education { primary_or_less, secondary, tertiary_plus };

enum class IncomeSource { wage, self_employment, pension, capital_rent, interhousehold_transfers };

inline constexpr std::size_t kIncomeSourceCount = 5;
inline constexpr std::array<IncomeSource, kIncomeSourceCount> kIncomeSources{
    IncomeSource::wage, IncomeSource::self_employment, IncomeSource::pension,
    IncomeSource::capital_rent, IncomeSource::interhousehold_transfers};

/// Children are persons strictly younger than this.
inline constexpr int kAdultAge = 18;
inline constexpr int kMaxAge = 110;

std::string_view to_string(Sex v);
std::string_view to_string(LaborStatus v);
std::string_view to_string(Education v);
std::string_view to_string(IncomeSource v);

// Parsers throw ValidationError on unknown names.
Sex parse_sex(std::string_view s);
LaborStatus parse_labor_status(std::string_view s);
Education parse_education(std::string_view s);
IncomeSource parse_income_source(std::string_view s);

struct Person {
    PersonId person_id{0};
    HouseholdId household_id{0};
    int age{0};
    Sex sex{Sex::male};
    LaborStatus labor_status{LaborStatus::inactive};
    std::optional<int> nace2;
    bool informal_wage{false};
    bool in_public_education{false};
    bool social_assistance_recipient{false};
    bool special_category{false};
    Education education{Education::primary_or_less};
    std::array<MonthlyAmounts, kIncomeSourceCount> income{};

    MonthlyAmounts &stream(IncomeSource s) noexcept { return income[static_cast<std::size_t>(s)]; }
    const MonthlyAmounts &stream(IncomeSource s) const noexcept {
        return income[static_cast<std::size_t>(s)];
    }
    Mkd annual(IncomeSource s) const noexcept { return annual_total(stream(s)); }
    bool is_child() const noexcept { return age < kAdultAge; }
    bool has_income(IncomeSource s) const noexcept;

    bool operator==(const Person &) const = default;
};

struct Household {
    HouseholdId household_id{0};
    std::vector<PersonId> member_ids;
    SurveyWeight survey_weight;
    bool owns_residence{false};
    bool owns_other_real_estate{false};
    std::optional<int> car_age_years;
    std::optional<int> land_parcel_m2;

    bool operator==(const Household &) const = default;
};

struct Provenance {
    bool synthetic{false};
    std::uint64_t seed{0};

    bool operator==(const Provenance &) const = default;
};

/// Immutable container of persons and households in canonical order
/// (households by id; persons by household id, then person id).
class Population {
  public:
    Population() = default;

    /// Sorts into canonical order, fills household member lists and checks
    /// every invariant. Throws ValidationError.
    Population(std::vector<Person> persons, std::vector<Household> households, int base_year,
               Provenance provenance);

    std::span<const Person> persons() const noexcept { return persons_; }
    std::span<const Household> households() const noexcept { return households_; }
    int base_year() const noexcept { return base_year_; }
    const Provenance &provenance() const noexcept { return provenance_; }

    /// Members of the i-th household (canonical order).
    std::span<const Person> members(std::size_t household_index) const noexcept;
    std::size_t household_count() const noexcept { return households_.size(); }
    bool empty() const noexcept { return households_.empty(); }

    /// Returns a copy whose persons were rewritten by fn(Person&). The
    /// household structure is kept and invariants are re-validated.
    template <typename Fn> Population with_persons(Fn &&fn) const {
        auto persons = persons_;
        for (auto &p : persons) {
            fn(p);
        }
        return Population(std::move(persons), households_, base_year_, provenance_);
    }

    bool operator==(const Population &) const = default;

  private:
    void validate() const;

    std::vector<Person> persons_;
    std::vector<Household> households_;
    std::vector<std::size_t> offsets_;
    int base_year_{2019};
    Provenance provenance_;
};

/// Checks the single-person invariants; returns an empty string when valid.
std::string person_violation(const Person &p);

} // namespace microsim
