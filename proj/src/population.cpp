#include "microsim/population.hpp"

#include "microsim/error.hpp"

#include <algorithm>
#include <unordered_set>

namespace microsim {

namespace {

template <typename E, std::size_t N>
E parse_enum(std::string_view s, const std::array<std::pair<E, std::string_view>, N> &names,
             std::string_view what) {
    for (const auto &[value, name] : names) {
        if (name == s) {
            return value;
        }
    }
    throw ValidationError("unknown " + std::string(what) + " '" + std::string(s) + "'");
}

template <typename E, std::size_t N>
std::string_view enum_name(E v, const std::array<std::pair<E, std::string_view>, N> &names) {
    for (const auto &[value, name] : names) {
        if (value == v) {
            return name;
        }
    }
    return "?";
}

constexpr std::array<std::pair<Sex, std::string_view>, 2> kSexNames{{
    {Sex::male, "male"},
    {Sex::female, "female"},
}};

constexpr std::array<std::pair<LaborStatus, std::string_view>, 8> kStatusNames{{
    {LaborStatus::employee, "employee"},
    {LaborStatus::self_employed, "self_employed"},
    {LaborStatus::unemployed_active, "unemployed_active"},
    {LaborStatus::unemployed_passive, "unemployed_passive"},
    {LaborStatus::pensioner, "pensioner"},
    {LaborStatus::student, "student"},
    {LaborStatus::child, "child"},
    {LaborStatus::inactive, "inactive"},
}};

constexpr std::array<std::pair<Education, std::string_view>, 3> kEducationNames{{
    {Education::primary_or_less, "primary_or_less"},
    {Education::secondary, "secondary"},
    {Education::tertiary_plus, "tertiary_plus"},
}};

constexpr std::array<std::pair<IncomeSource, std::string_view>, 5> kSourceNames{{
    {IncomeSource::wage, "wage"},
    {IncomeSource::self_employment, "self_employment"},
    {IncomeSource::pension, "pension"},
    {IncomeSource::capital_rent, "capital_rent"},
    {IncomeSource::interhousehold_transfers, "interhousehold_transfers"},
}};

} // namespace

std::string_view to_string(Sex v) { return enum_name(v, kSexNames); }
std::string_view to_string(LaborStatus v) { return enum_name(v, kStatusNames); }
std::string_view to_string(Education v) { return enum_name(v, kEducationNames); }
std::string_view to_string(IncomeSource v) { return enum_name(v, kSourceNames); }

Sex parse_sex(std::string_view s) { return parse_enum(s, kSexNames, "sex"); }
LaborStatus parse_labor_status(std::string_view s) {
    return parse_enum(s, kStatusNames, "labor_status");
}
Education parse_education(std::string_view s) {
    return parse_enum(s, kEducationNames, "education_level");
}
IncomeSource parse_income_source(std::string_view s) {
    return parse_enum(s, kSourceNames, "income source");
}

bool Person::has_income(IncomeSource s) const noexcept {
    const auto &m = stream(s);
    return std::any_of(m.begin(), m.end(), [](Mkd v) { return v != 0; });
}

std::string person_violation(const Person &p) {
    if (p.age < 0 || p.age > kMaxAge) {
        return "age out of range [0, 110]";
    }
    for (const auto &stream : p.income) {
        for (Mkd v : stream) {
            if (v < 0) {
                return "negative income";
            }
        }
    }
    const bool works =
        p.labor_status == LaborStatus::employee || p.labor_status == LaborStatus::self_employed;
    if (p.nace2.has_value() != works) {
        return works ? "nace2 missing for employee/self_employed"
                     : "nace2 present for non-working status";
    }
    if (p.has_income(IncomeSource::wage) && p.labor_status != LaborStatus::employee) {
        return "wage income for non-employee";
    }
    if (p.has_income(IncomeSource::self_employment) &&
        p.labor_status != LaborStatus::self_employed) {
        return "self-employment income for non-self-employed";
    }
    if (p.informal_wage && p.labor_status != LaborStatus::employee) {
        return "informal_wage flag on non-employee";
    }
    if (p.age < kAdultAge && p.labor_status != LaborStatus::child &&
        p.labor_status != LaborStatus::student) {
        return "person under 18 must be child or student";
    }
    return {};
}

Population::Population(std::vector<Person> persons, std::vector<Household> households,
                       int base_year, Provenance provenance)
    : persons_{std::move(persons)}, households_{std::move(households)}, base_year_{base_year},
      provenance_{provenance} {
    std::sort(households_.begin(), households_.end(),
              [](const Household &a, const Household &b) { return a.household_id < b.household_id; });
    std::sort(persons_.begin(), persons_.end(), [](const Person &a, const Person &b) {
        return a.household_id != b.household_id ? a.household_id < b.household_id
                                                : a.person_id < b.person_id;
    });
    offsets_.assign(households_.size() + 1, 0);
    std::size_t pi = 0;
    for (std::size_t h = 0; h < households_.size(); ++h) {
        auto &hh = households_[h];
        if (h > 0 && households_[h - 1].household_id == hh.household_id) {
            throw ValidationError("duplicate household_id " + std::to_string(hh.household_id));
        }
        if (pi < persons_.size() && persons_[pi].household_id < hh.household_id) {
            throw ValidationError("person " + std::to_string(persons_[pi].person_id) +
                                  " references unknown household_id " +
                                  std::to_string(persons_[pi].household_id));
        }
        offsets_[h] = pi;
        hh.member_ids.clear();
        while (pi < persons_.size() && persons_[pi].household_id == hh.household_id) {
            hh.member_ids.push_back(persons_[pi].person_id);
            ++pi;
        }
    }
    offsets_[households_.size()] = pi;
    if (pi != persons_.size()) {
        throw ValidationError("person " + std::to_string(persons_[pi].person_id) +
                              " references unknown household_id " +
                              std::to_string(persons_[pi].household_id));
    }
    validate();
}

std::span<const Person> Population::members(std::size_t household_index) const noexcept {
    return std::span<const Person>(persons_).subspan(
        offsets_[household_index], offsets_[household_index + 1] - offsets_[household_index]);
}

void Population::validate() const {
    std::unordered_set<PersonId> seen;
    seen.reserve(persons_.size());
    for (const auto &p : persons_) {
        if (!seen.insert(p.person_id).second) {
            throw ValidationError("duplicate person_id " + std::to_string(p.person_id));
        }
        if (auto v = person_violation(p); !v.empty()) {
            throw ValidationError("person " + std::to_string(p.person_id) + ": " + v);
        }
    }
    for (const auto &hh : households_) {
        if (hh.member_ids.empty()) {
            throw ValidationError("household " + std::to_string(hh.household_id) + " has no members");
        }
        if (hh.survey_weight.hundredths() <= 0) {
            throw ValidationError("household " + std::to_string(hh.household_id) +
                                  ": survey_weight must be > 0");
        }
        if ((hh.car_age_years && *hh.car_age_years < 0) ||
            (hh.land_parcel_m2 && *hh.land_parcel_m2 < 0)) {
            throw ValidationError("household " + std::to_string(hh.household_id) +
                                  ": negative property attribute");
        }
    }
}

} // namespace microsim
