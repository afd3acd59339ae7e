#pragma once

// Builders, random populations and brute-force reference computations shared
// by the unit tests and the acceptance runner. The oracles deliberately avoid
// the library's sorting, SIMD and median code.

#include "microsim/money.hpp"
#include "microsim/nace.hpp"
#include "microsim/population.hpp"
#include "microsim/poverty.hpp"
#include "microsim/shock.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace microsim::test {

inline std::filesystem::path source_path(const std::string &rel) {
    return std::filesystem::path(MICROSIM_SOURCE_DIR) / rel;
}

inline MonthlyAmounts flat(Mkd v) {
    MonthlyAmounts m{};
    m.fill(v);
    return m;
}

inline Person person(PersonId id, HouseholdId hh, int age, LaborStatus status) {
    Person p;
    p.person_id = id;
    p.household_id = hh;
    p.age = age;
    p.labor_status = status;
    if (status == LaborStatus::employee || status == LaborStatus::self_employed) {
        p.nace2 = 47;
    }
    return p;
}

inline Person employee(PersonId id, HouseholdId hh, int age, Mkd wage, int nace2 = 47) {
    auto p = person(id, hh, age, LaborStatus::employee);
    p.nace2 = nace2;
    p.stream(IncomeSource::wage) = flat(wage);
    return p;
}

inline Person self_employed(PersonId id, HouseholdId hh, int age, Mkd income, int nace2 = 47) {
    auto p = person(id, hh, age, LaborStatus::self_employed);
    p.nace2 = nace2;
    p.stream(IncomeSource::self_employment) = flat(income);
    return p;
}

inline Person child(PersonId id, HouseholdId hh, int age) {
    return person(id, hh, age, LaborStatus::child);
}

inline Household household(HouseholdId id, std::int64_t weight_h = 100) {
    Household h;
    h.household_id = id;
    h.survey_weight = SurveyWeight::from_hundredths(weight_h);
    h.owns_residence = true;
    return h;
}

inline Population make_population(std::vector<Person> persons, std::vector<Household> households) {
    return Population(std::move(persons), std::move(households), 2019, Provenance{});
}

struct RandomPopulationOptions {
    int min_households{1};
    int max_households{100};
    int max_size{7};
    Mkd max_monthly{90000};
    /// Chance that a month of an income stream differs from the first month.
    double month_noise{0.3};
};

/// Valid population with arbitrary statuses, incomes, assets and weights.
inline Population random_population(std::uint64_t seed, const RandomPopulationOptions &o = {}) {
    std::mt19937_64 rng(seed);
    auto uni = [&](std::int64_t lo, std::int64_t hi) {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
    };
    auto coin = [&](double p) { return std::bernoulli_distribution(p)(rng); };
    auto stream = [&](Mkd hi) {
        MonthlyAmounts m{};
        const Mkd base = uni(0, hi);
        for (auto &v : m) {
            v = coin(o.month_noise) ? uni(0, hi) : base;
        }
        return m;
    };
    const auto &divisions = nace::divisions();
    const int n = static_cast<int>(uni(o.min_households, o.max_households));
    std::vector<Person> persons;
    std::vector<Household> households;
    PersonId next = 1;
    for (int h = 1; h <= n; ++h) {
        auto hh = household(h, uni(1, 20000));
        hh.owns_residence = coin(0.8);
        hh.owns_other_real_estate = coin(0.1);
        if (coin(0.4)) {
            hh.car_age_years = static_cast<int>(uni(0, 20));
        }
        if (coin(0.3)) {
            hh.land_parcel_m2 = static_cast<int>(uni(1, 1500));
        }
        households.push_back(hh);
        const int size = static_cast<int>(uni(1, o.max_size));
        for (int k = 0; k < size; ++k) {
            Person p;
            p.person_id = next++;
            p.household_id = h;
            p.age = static_cast<int>(uni(0, 95));
            p.sex = coin(0.5) ? Sex::female : Sex::male;
            p.education = static_cast<Education>(uni(0, 2));
            p.special_category = coin(0.03);
            if (p.age < kAdultAge) {
                p.labor_status = p.age >= 15 && coin(0.5) ? LaborStatus::student : LaborStatus::child;
                p.in_public_education = p.age >= 6 && coin(0.9);
            } else {
                p.labor_status = static_cast<LaborStatus>(uni(0, 7));
                if (p.labor_status == LaborStatus::child) {
                    p.labor_status = LaborStatus::inactive;
                }
                p.in_public_education = p.labor_status == LaborStatus::student && coin(0.8);
            }
            if (p.labor_status == LaborStatus::employee) {
                p.nace2 = divisions[static_cast<std::size_t>(uni(0, nace::kDivisionCount - 1))];
                p.informal_wage = coin(0.15);
                p.stream(IncomeSource::wage) = stream(o.max_monthly);
            } else if (p.labor_status == LaborStatus::self_employed) {
                p.nace2 = divisions[static_cast<std::size_t>(uni(0, nace::kDivisionCount - 1))];
                p.stream(IncomeSource::self_employment) = stream(o.max_monthly / 2);
            }
            if (p.labor_status == LaborStatus::pensioner || coin(0.05)) {
                p.stream(IncomeSource::pension) = stream(30000);
            }
            if (coin(0.1)) {
                p.stream(IncomeSource::capital_rent) = stream(8000);
            }
            if (coin(0.1)) {
                p.stream(IncomeSource::interhousehold_transfers) = stream(6000);
            }
            persons.push_back(p);
        }
    }
    return make_population(std::move(persons), std::move(households));
}

/// Base and shocked survey aggregates over a random subset of cells. Counts
/// straddle the small-cell threshold; shocked incomes stay positive.
inline std::pair<LfsAggregate, LfsAggregate> random_lfs_pair(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto uni = [&](std::int64_t lo, std::int64_t hi) {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
    };
    LfsAggregate base{"base", 4, {}, {}};
    LfsAggregate shocked{"shocked", static_cast<int>(uni(1, 4)), {}, {}};
    for (std::size_t i = 0; i < kWageCellCount; ++i) {
        if (uni(0, 3) == 0) {
            continue;
        }
        const auto key = wage_cell_key(i);
        const Mkd income = uni(0, 3) == 0 ? 0 : uni(1000, 5000000);
        base.wage[key] = {income, uni(0, 3000)};
        shocked.wage[key] = {uni(1, 5000000), uni(0, 3000)};
    }
    for (std::size_t i = 0; i < kSelfEmpCellCount; ++i) {
        if (uni(0, 4) == 0) {
            continue;
        }
        const auto key = selfemp_cell_key(i);
        base.selfemp[key] = {uni(1000, 5000000), uni(0, 3000)};
        shocked.selfemp[key] = {uni(1, 5000000), uni(0, 3000)};
    }
    return {base, shocked};
}

// ---- GMA eligibility truth table --------------------------------------------

struct GmaCase {
    const char *name;
    bool other_real_estate;
    std::optional<int> car_age;
    std::optional<int> land_m2;
    bool income_below;
    bool eligible_pre;
    bool eligible_relaxed;
};

/// Eight asset situations crossed with income below and above the threshold.
/// The relaxed regime admits an old car and a small parcel; the pre-COVID
/// regime admits neither.
inline const std::vector<GmaCase> &gma_truth_table() {
    static const std::vector<GmaCase> cases{
        {"no assets, low income", false, {}, {}, true, true, true},
        {"no assets, high income", false, {}, {}, false, false, false},
        {"other real estate, low income", true, {}, {}, true, false, false},
        {"other real estate, high income", true, {}, {}, false, false, false},
        {"car 3y, low income", false, 3, {}, true, false, false},
        {"car 3y, high income", false, 3, {}, false, false, false},
        {"car 8y, low income", false, 8, {}, true, false, true},
        {"car 8y, high income", false, 8, {}, false, false, false},
        {"land 300m2, low income", false, {}, 300, true, false, true},
        {"land 300m2, high income", false, {}, 300, false, false, false},
        {"land 700m2, low income", false, {}, 700, true, false, false},
        {"land 700m2, high income", false, {}, 700, false, false, false},
        {"car 8y and land 300m2, low income", false, 8, 300, true, false, true},
        {"car 8y and land 300m2, high income", false, 8, 300, false, false, false},
        {"car 5y and land 499m2, low income", false, 5, 499, true, false, true},
        {"car 4y and land 500m2, low income", false, 4, 500, true, false, false},
    };
    return cases;
}

/// One pensioner household for a truth-table row: monthly pension 3000 or
/// 5000 against the single-adult threshold of 4000.
inline Population gma_case_population(const GmaCase &c) {
    auto p = person(1, 1, 70, LaborStatus::pensioner);
    p.stream(IncomeSource::pension) = flat(c.income_below ? 3000 : 5000);
    auto h = household(1);
    h.owns_other_real_estate = c.other_real_estate;
    h.car_age_years = c.car_age;
    h.land_parcel_m2 = c.land_m2;
    return make_population({p}, {h});
}

// ---- brute-force poverty oracle ---------------------------------------------

/// Equivalized income as a plain fraction, scale written out longhand.
struct Fraction {
    __int128 num;
    __int128 den;
};

inline bool less(const Fraction &a, const Fraction &b) { return a.num * b.den < b.num * a.den; }
inline bool equal(const Fraction &a, const Fraction &b) { return a.num * b.den == b.num * a.den; }

struct OraclePerson {
    Fraction eq;
    std::int64_t weight_h;
    bool child;
};

/// OECD-modified scale: 1.0 for the first member, 0.5 for each other member
/// aged 14 or over, 0.3 for each other member under 14. When only young
/// members live in the household the first of them counts 1.0.
inline std::vector<OraclePerson> oracle_people(const Population &pop,
                                               const std::vector<Mkd> &annual) {
    std::vector<OraclePerson> out;
    for (std::size_t h = 0; h < pop.household_count(); ++h) {
        const auto members = pop.members(h);
        int older = 0;
        for (const auto &p : members) {
            older += p.age >= 14 ? 1 : 0;
        }
        const int young = static_cast<int>(members.size()) - older;
        // Tenths of an adult-equivalent, times ten for hundredths.
        std::int64_t tenths = 0;
        if (older > 0) {
            tenths = 10 + 5 * (older - 1) + 3 * young;
        } else {
            tenths = 10 + 3 * (young - 1);
        }
        for (const auto &p : members) {
            out.push_back({Fraction{static_cast<__int128>(annual[h]) * 10, tenths},
                           pop.households()[h].survey_weight.hundredths(), p.age < 18});
        }
    }
    return out;
}

/// Quadratic scan: the smallest value whose weight at or below it reaches half.
inline Fraction oracle_median(const std::vector<OraclePerson> &people) {
    __int128 total = 0;
    for (const auto &p : people) {
        total += p.weight_h;
    }
    bool found = false;
    Fraction best{0, 1};
    for (const auto &cand : people) {
        __int128 at_or_below = 0;
        for (const auto &p : people) {
            if (!less(cand.eq, p.eq)) {
                at_or_below += p.weight_h;
            }
        }
        if (2 * at_or_below >= total && (!found || less(cand.eq, best))) {
            best = cand.eq;
            found = true;
        }
    }
    return best;
}

struct OracleRate {
    std::int64_t below_h{0};
    std::int64_t total_h{0};
};

inline OracleRate oracle_rate(const std::vector<OraclePerson> &people, const Fraction &line,
                              bool children_only) {
    OracleRate r;
    for (const auto &p : people) {
        if (children_only && !p.child) {
            continue;
        }
        r.total_h += p.weight_h;
        if (less(p.eq, line)) {
            r.below_h += p.weight_h;
        }
    }
    return r;
}

inline bool same(const Ratio &r, const Fraction &f) {
    return static_cast<__int128>(r.num) * f.den == f.num * static_cast<__int128>(r.den);
}

} // namespace microsim::test
