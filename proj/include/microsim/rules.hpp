#pragma once

#include "microsim/money.hpp"
#include "microsim/policy.hpp"
#include "microsim/population.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>

namespace microsim {

/// Net wage after social contributions and flat income tax. Informal wages
/// bypass the wedge.
Mkd gross_to_net(Mkd gross, const PolicyParameters &params, bool informal = false);

/// A household as seen by the rules: its current member incomes (possibly
/// shocked) and the pre-shock incomes used for months before January.
/// Both member spans list the same persons in the same order.
struct HouseholdContext {
    const Household &household;
    std::span<const Person> members;
    std::span<const Person> baseline_members;
};

/// Net market income (net wages + self-employment) of one person in a
/// 1-based month of the simulated year.
Mkd net_market_income(const Person &p, int month, const PolicyParameters &params);

/// Household income counted by the GMA means test for the given month.
/// pre_covid: rounded mean over months m-3..m-1 including capital/rent;
/// relaxed: month m-1 only, excluding capital/rent. Months before January
/// read the pre-shock profile of the previous year.
Mkd gma_countable_income(const HouseholdContext &hh, int month, GmaRegime regime,
                         const PolicyParameters &params);

/// Monthly GMA threshold of the household from the within-GMA scale.
Mkd gma_threshold(std::span<const Person> members, const PolicyParameters &params);

/// Failed eligibility tests, as bit flags.
enum GmaFailure : unsigned {
    kGmaEligible = 0,
    kOtherRealEstate = 1u << 0,
    kRecentCar = 1u << 1,  ///< car younger than 5 years (both regimes)
    kAnyCar = 1u << 2,     ///< any car (pre-COVID regime only)
    kLargeLand = 1u << 3,  ///< parcel of 500 m2 or more (both regimes)
    kAnyLand = 1u << 4,    ///< any parcel (pre-COVID regime only)
    kIncomeTooHigh = 1u << 5,
};

struct GmaEligibility {
    bool eligible{false};
    unsigned failures{0};
    Mkd countable_income{0};
    Mkd threshold{0};
};

std::string describe_failures(unsigned failures);

/// Regime taken from params.gma_regime.
GmaEligibility gma_eligible(const HouseholdContext &hh, int month, const PolicyParameters &params);

/// Top-up to the threshold when eligible (strictly below), else 0. The
/// energy supplement is separate (energy_supplement).
Mkd gma_award(const HouseholdContext &hh, int month, const PolicyParameters &params);

/// Energy supplement for a GMA recipient in the given month.
Mkd energy_supplement(bool gma_recipient, int month, const PolicyParameters &params);

/// May 2020 one-off for one person. household_assisted: the household
/// received GMA, child allowance or education allowance in any month up to May.
Mkd oneoff_may2020(const Person &p, bool household_assisted, const PolicyParameters &params);

/// December 2020 one-off for one person.
Mkd oneoff_dec2020(const Person &p, const PolicyParameters &params);

/// Population statistics the TBI rule depends on, taken from the baseline.
struct TbiStatistics {
    Ratio median_per_capita_annual; ///< weighted median of household income / size
    Ratio relative_line;            ///< annual, per equivalent adult
};

/// Monthly TBI transfer paid to each qualifying household. Throws
/// RuntimeError when the median is zero.
Mkd tbi_monthly_transfer(const TbiStatistics &stats, const PolicyParameters &params);

/// True when annual per-capita income is strictly below
/// vulnerability_multiplier * relative line.
bool tbi_qualifies(Mkd annual_income, std::size_t household_size, const TbiStatistics &stats,
                   const PolicyParameters &params);

/// Monthly TBI award of a household (0 when it does not qualify).
Mkd tbi_award(Mkd annual_income, std::size_t household_size, const TbiStatistics &stats,
              const PolicyParameters &params);

/// Components of one household-month. All entries are >= 0.
struct MonthLedger {
    Mkd net_market{0};
    Mkd carried{0}; ///< pensions, capital/rent, inter-household transfers
    Mkd gma{0};
    Mkd energy{0};
    Mkd child_allowance{0};
    Mkd education_allowance{0};
    Mkd oneoff_may{0};
    Mkd oneoff_dec{0};
    Mkd tbi{0};

    Mkd benefits() const noexcept { return gma + energy + child_allowance + education_allowance; }
    Mkd oneoffs() const noexcept { return oneoff_may + oneoff_dec; }
    Mkd total() const noexcept { return net_market + carried + benefits() + oneoffs() + tbi; }
    bool operator==(const MonthLedger &) const = default;
};

struct HouseholdFiscalResult {
    HouseholdId household_id{0};
    std::array<MonthLedger, kMonths> months{};
    Mkd disposable_annual{0};
    bool gma_recipient{false};      ///< GMA paid in any month
    bool assisted_by_may{false};    ///< GMA or allowances paid in months 1..5
    bool operator==(const HouseholdFiscalResult &) const = default;
};

struct PipelineFlags {
    bool one_offs{false};
    bool tbi{false};
};

/// Composes the rules month by month. params.gma_regime selects the GMA
/// regime. tbi_stats is required when flags.tbi is set.
HouseholdFiscalResult disposable_income(const HouseholdContext &hh, const PolicyParameters &params,
                                        const PipelineFlags &flags,
                                        const TbiStatistics *tbi_stats = nullptr);

} // namespace microsim
