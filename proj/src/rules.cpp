#include "microsim/rules.hpp"

#include "microsim/error.hpp"

#include <algorithm>

namespace microsim {

Mkd gross_to_net(Mkd gross, const PolicyParameters &params, bool informal) {
    if (informal || gross <= 0) {
        return gross;
    }
    const Mkd ssc = round_mkd(static_cast<double>(gross) * params.ssc_rate);
    const Mkd pit = round_mkd(static_cast<double>(gross - ssc) * params.pit_rate);
    return gross - ssc - pit;
}

Mkd net_market_income(const Person &p, int month, const PolicyParameters &params) {
    const auto i = static_cast<std::size_t>(month - 1);
    return gross_to_net(p.stream(IncomeSource::wage)[i], params, p.informal_wage) +
           p.stream(IncomeSource::self_employment)[i];
}

namespace {

Mkd carried_income(const Person &p, std::size_t i, bool include_rent) {
    Mkd v = p.stream(IncomeSource::pension)[i] + p.stream(IncomeSource::interhousehold_transfers)[i];
    if (include_rent) {
        v += p.stream(IncomeSource::capital_rent)[i];
    }
    return v;
}

// Countable income of a single month; months <= 0 read the previous year of
// the pre-shock profile.
Mkd countable_in_month(const HouseholdContext &hh, int month, bool include_rent,
                       const PolicyParameters &params) {
    const bool prior_year = month < 1;
    const auto people = prior_year ? hh.baseline_members : hh.members;
    const int m = prior_year ? month + kMonths : month;
    Mkd total = 0;
    for (const auto &p : people) {
        total += net_market_income(p, m, params) + carried_income(p, static_cast<std::size_t>(m - 1), include_rent);
    }
    return total;
}

std::size_t count_children(std::span<const Person> members) {
    return static_cast<std::size_t>(
        std::count_if(members.begin(), members.end(), [](const Person &p) { return p.is_child(); }));
}

} // namespace

Mkd gma_countable_income(const HouseholdContext &hh, int month, GmaRegime regime,
                         const PolicyParameters &params) {
    if (month < 1 || month > kMonths) {
        throw ValidationError("month must be in 1..12");
    }
    if (regime == GmaRegime::relaxed) {
        return countable_in_month(hh, month - 1, false, params);
    }
    Mkd sum = 0;
    for (int k = 1; k <= 3; ++k) {
        sum += countable_in_month(hh, month - k, true, params);
    }
    return div_round(sum, 3);
}

Mkd gma_threshold(std::span<const Person> members, const PolicyParameters &params) {
    const auto children = count_children(members);
    const auto adults = members.size() - children;
    double scale = params.gma_scale.first_adult;
    if (adults > 0) {
        scale += params.gma_scale.additional_adult * static_cast<double>(adults - 1) +
                 params.gma_scale.child * static_cast<double>(children);
    } else if (children > 0) {
        scale += params.gma_scale.child * static_cast<double>(children - 1);
    }
    return round_mkd(static_cast<double>(params.gma_base_amount) * scale);
}

std::string describe_failures(unsigned failures) {
    if (failures == kGmaEligible) {
        return "eligible";
    }
    std::string out;
    const auto add = [&](unsigned bit, const char *name) {
        if (failures & bit) {
            if (!out.empty()) {
                out += '|';
            }
            out += name;
        }
    };
    add(kOtherRealEstate, "other_real_estate");
    add(kRecentCar, "car_under_5_years");
    add(kAnyCar, "any_car");
    add(kLargeLand, "land_500m2_or_more");
    add(kAnyLand, "any_land");
    add(kIncomeTooHigh, "income_not_below_threshold");
    return out;
}

GmaEligibility gma_eligible(const HouseholdContext &hh, int month, const PolicyParameters &params) {
    GmaEligibility e;
    const auto &h = hh.household;
    if (h.owns_other_real_estate) {
        e.failures |= kOtherRealEstate;
    }
    if (h.car_age_years && *h.car_age_years < 5) {
        e.failures |= kRecentCar;
    }
    if (h.land_parcel_m2 && *h.land_parcel_m2 >= 500) {
        e.failures |= kLargeLand;
    }
    if (params.gma_regime == GmaRegime::pre_covid) {
        if (h.car_age_years) {
            e.failures |= kAnyCar;
        }
        if (h.land_parcel_m2) {
            e.failures |= kAnyLand;
        }
    }
    e.countable_income = gma_countable_income(hh, month, params.gma_regime, params);
    e.threshold = gma_threshold(hh.members, params);
    if (e.countable_income >= e.threshold) {
        e.failures |= kIncomeTooHigh;
    }
    e.eligible = e.failures == kGmaEligible;
    return e;
}

Mkd gma_award(const HouseholdContext &hh, int month, const PolicyParameters &params) {
    const auto e = gma_eligible(hh, month, params);
    return e.eligible ? std::max<Mkd>(0, e.threshold - e.countable_income) : 0;
}

Mkd energy_supplement(bool gma_recipient, int month, const PolicyParameters &params) {
    return gma_recipient && month <= params.energy_supplement_months()
               ? params.energy_supplement_amount
               : 0;
}

Mkd oneoff_may2020(const Person &p, bool household_assisted, const PolicyParameters &params) {
    const auto &may = params.oneoff_may;
    if ((p.age >= kAdultAge && household_assisted) ||
        p.labor_status == LaborStatus::unemployed_active) {
        return may.adult_sa_amount;
    }
    if (p.labor_status == LaborStatus::employee) {
        bool wage_only = p.has_income(IncomeSource::wage);
        for (auto s : kIncomeSources) {
            if (s != IncomeSource::wage && p.has_income(s)) {
                wage_only = false;
            }
        }
        const Mkd may_gross = p.stream(IncomeSource::wage)[4];
        const Mkd may_net = gross_to_net(may_gross, params, p.informal_wage);
        if (wage_only && may_gross > 0 && may_net <= may.low_wage_cap) {
            return may.low_wage_amount;
        }
    }
    if (p.in_public_education && p.age >= may.student_age_min && p.age <= may.student_age_max) {
        return may.student_amount;
    }
    return 0;
}

Mkd oneoff_dec2020(const Person &p, const PolicyParameters &params) {
    const auto &dec = params.oneoff_dec;
    if (p.labor_status == LaborStatus::unemployed_passive) {
        bool low = true;
        for (int m = 0; m < kMonths; ++m) {
            Mkd month_income = 0;
            for (const auto &stream : p.income) {
                month_income += stream[m];
            }
            low = low && month_income <= dec.passive_jobseeker_cap;
        }
        if (low) {
            return dec.amount;
        }
    }
    if (p.labor_status == LaborStatus::pensioner) {
        const auto &pension = p.stream(IncomeSource::pension);
        if (std::all_of(pension.begin(), pension.end(),
                        [&](Mkd v) { return v < dec.pension_cap; })) {
            return dec.amount;
        }
    }
    return p.special_category ? dec.amount : 0;
}

Mkd tbi_monthly_transfer(const TbiStatistics &stats, const PolicyParameters &params) {
    if (stats.median_per_capita_annual.num <= 0) {
        throw RuntimeError("TBI: median per-capita income is zero");
    }
    const long double monthly_median = static_cast<long double>(stats.median_per_capita_annual.num) /
                                       (static_cast<long double>(stats.median_per_capita_annual.den) * 12.0L);
    return round_mkd(static_cast<long double>(params.tbi.transfer_fraction) * monthly_median);
}

bool tbi_qualifies(Mkd annual_income, std::size_t household_size, const TbiStatistics &stats,
                   const PolicyParameters &params) {
    if (household_size == 0) {
        throw ValidationError("TBI: empty household");
    }
    const long double per_capita =
        static_cast<long double>(annual_income) / static_cast<long double>(household_size);
    const long double threshold = static_cast<long double>(params.tbi.vulnerability_multiplier) *
                                  static_cast<long double>(stats.relative_line.num) /
                                  static_cast<long double>(stats.relative_line.den);
    return per_capita < threshold;
}

Mkd tbi_award(Mkd annual_income, std::size_t household_size, const TbiStatistics &stats,
              const PolicyParameters &params) {
    const Mkd transfer = tbi_monthly_transfer(stats, params);
    return tbi_qualifies(annual_income, household_size, stats, params) ? transfer : 0;
}

HouseholdFiscalResult disposable_income(const HouseholdContext &hh, const PolicyParameters &params,
                                        const PipelineFlags &flags,
                                        const TbiStatistics *tbi_stats) {
    if (hh.members.empty()) {
        throw ValidationError("household " + std::to_string(hh.household.household_id) +
                              " has no members");
    }
    if (hh.members.size() != hh.baseline_members.size()) {
        throw ValidationError("household " + std::to_string(hh.household.household_id) +
                              ": baseline member list differs");
    }
    HouseholdFiscalResult r;
    r.household_id = hh.household.household_id;
    const auto children = count_children(hh.members);
    const auto enrolled = static_cast<std::size_t>(
        std::count_if(hh.members.begin(), hh.members.end(),
                      [](const Person &p) { return p.is_child() && p.in_public_education; }));

    for (int m = 1; m <= kMonths; ++m) {
        auto &l = r.months[static_cast<std::size_t>(m - 1)];
        for (const auto &p : hh.members) {
            l.net_market += net_market_income(p, m, params);
            l.carried += carried_income(p, static_cast<std::size_t>(m - 1), true);
        }
        const auto e = gma_eligible(hh, m, params);
        const bool recipient = e.eligible;
        if (recipient) {
            l.gma = e.threshold - e.countable_income;
            r.gma_recipient = true;
        }
        l.energy = energy_supplement(recipient, m, params);
        if (recipient || params.universal_child_allowance) {
            l.child_allowance = params.child_allowance_amount * static_cast<Mkd>(children);
        }
        if (recipient) {
            l.education_allowance = params.education_allowance_amount * static_cast<Mkd>(enrolled);
        }
        if (m <= 5 && l.benefits() > 0) {
            r.assisted_by_may = true;
        }
        if (flags.one_offs && m == 5) {
            for (const auto &p : hh.members) {
                l.oneoff_may += oneoff_may2020(p, r.assisted_by_may, params);
            }
        }
        if (flags.one_offs && m == 12) {
            for (const auto &p : hh.members) {
                l.oneoff_dec += oneoff_dec2020(p, params);
            }
        }
    }
    Mkd annual = 0;
    for (const auto &l : r.months) {
        annual += l.total();
    }
    if (flags.tbi) {
        if (tbi_stats == nullptr) {
            throw ValidationError("TBI enabled without population statistics");
        }
        const Mkd award = tbi_award(annual, hh.members.size(), *tbi_stats, params);
        for (auto &l : r.months) {
            l.tbi = award;
        }
        annual += award * kMonths;
    }
    r.disposable_annual = annual;
    return r;
}

} // namespace microsim
