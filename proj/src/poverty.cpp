#include "microsim/poverty.hpp"

#include "microsim/error.hpp"
#include "microsim/simd/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace microsim {

namespace {

// 2^53: doubles hold every integer up to this magnitude exactly.
constexpr long double kExactDoubleLimit = 9007199254740992.0L;

} // namespace

EquivalenceScale EquivalenceScale::from_decimals(double additional_adult, double child) {
    EquivalenceScale s;
    s.additional_adult_h = to_fixed_point(additional_adult, 2, "equivalence_scale.additional_adult");
    s.child_h = to_fixed_point(child, 2, "equivalence_scale.child");
    if (s.additional_adult_h <= 0 || s.child_h <= 0) {
        throw ValidationError("equivalence scale coefficients must be > 0");
    }
    return s;
}

std::int64_t equivalence_divisor(std::span<const Person> members, const EquivalenceScale &scale) {
    if (members.empty()) {
        throw ValidationError("equivalized income of an empty household");
    }
    std::int64_t older = 0;
    std::int64_t young = 0;
    for (const auto &p : members) {
        (p.age < scale.child_age_limit ? young : older) += 1;
    }
    // The first member counts 1.0 whatever their age.
    if (older > 0) {
        return 100 + scale.additional_adult_h * (older - 1) + scale.child_h * young;
    }
    return 100 + scale.child_h * (young - 1);
}

Ratio equivalized_income(Mkd annual, std::span<const Person> members, const EquivalenceScale &scale) {
    return Ratio{annual * 100, equivalence_divisor(members, scale)};
}

template <typename T> T weighted_median(std::vector<Weighted<T>> items) {
    if (items.empty()) {
        throw ValidationError("weighted median of an empty set");
    }
    __int128 total = 0;
    for (const auto &it : items) {
        if (it.weight <= 0) {
            throw ValidationError("weighted median requires positive weights");
        }
        total += it.weight;
    }
    std::stable_sort(items.begin(), items.end(),
                     [](const Weighted<T> &a, const Weighted<T> &b) { return a.value < b.value; });
    __int128 cumulative = 0;
    for (const auto &it : items) {
        cumulative += it.weight;
        if (2 * cumulative >= total) {
            return it.value;
        }
    }
    return items.back().value;
}

template Ratio weighted_median(std::vector<Weighted<Ratio>>);
template std::int64_t weighted_median(std::vector<Weighted<std::int64_t>>);
template double weighted_median(std::vector<Weighted<double>>);

std::string_view to_string(ChildAgeBand b) {
    switch (b) {
    case ChildAgeBand::age_0_5:
        return "0-5";
    case ChildAgeBand::age_6_14:
        return "6-14";
    case ChildAgeBand::age_15_17:
        return "15-17";
    }
    return "?";
}

std::string_view to_string(AdultEducation e) {
    switch (e) {
    case AdultEducation::primary_or_less:
        return "primary_or_less";
    case AdultEducation::secondary:
        return "secondary";
    case AdultEducation::tertiary_plus:
        return "tertiary_plus";
    case AdultEducation::no_adults:
        return "no_adults";
    }
    return "?";
}

std::string_view to_string(Indicator i) {
    switch (i) {
    case Indicator::relative:
        return "relative";
    case Indicator::abs_extreme:
        return "abs_extreme";
    case Indicator::abs_upper:
        return "abs_upper";
    }
    return "?";
}

std::optional<ChildAgeBand> PersonRecord::child_age_band() const noexcept {
    if (age < 0 || age >= kAdultAge) {
        return std::nullopt;
    }
    if (age <= 5) {
        return ChildAgeBand::age_0_5;
    }
    if (age <= 14) {
        return ChildAgeBand::age_6_14;
    }
    return ChildAgeBand::age_15_17;
}

IncomeTable::IncomeTable(const Population &pop, std::span<const Mkd> annual_income,
                         const EquivalenceScale &scale)
    : household_income_(annual_income.begin(), annual_income.end()) {
    if (annual_income.size() != pop.household_count()) {
        throw ValidationError("income table: one income per household required");
    }
    persons_.reserve(pop.persons().size());
    for (std::size_t h = 0; h < pop.household_count(); ++h) {
        const auto members = pop.members(h);
        const auto eq = equivalized_income(annual_income[h], members, scale);
        std::int64_t children = 0;
        std::int64_t adults = 0;
        std::int64_t education_sum = 0;
        for (const auto &p : members) {
            if (p.is_child()) {
                ++children;
            } else {
                ++adults;
                education_sum += static_cast<std::int64_t>(p.education);
            }
        }
        AdultEducation edu = AdultEducation::no_adults;
        if (adults > 0) {
            // mean level rounded half up
            edu = static_cast<AdultEducation>((2 * education_sum + adults) / (2 * adults));
        }
        for (const auto &p : members) {
            PersonRecord r;
            r.person_id = p.person_id;
            r.household_index = h;
            r.age = p.age;
            r.sex = p.sex;
            r.equivalized = eq;
            r.weight_h = pop.households()[h].survey_weight.hundredths();
            r.three_plus_children = children >= 3;
            r.household_education = edu;
            persons_.push_back(r);
            value_num_.push_back(static_cast<double>(eq.num));
            value_den_.push_back(static_cast<double>(eq.den));
            max_num_ = std::max(max_num_, eq.num < 0 ? -eq.num : eq.num);
            max_den_ = std::max(max_den_, eq.den);
        }
    }
}

Ratio relative_poverty_line(const IncomeTable &table) {
    std::vector<Weighted<Ratio>> items;
    items.reserve(table.persons().size());
    for (const auto &p : table.persons()) {
        items.push_back({p.equivalized, p.weight_h});
    }
    if (items.empty()) {
        throw ValidationError("relative poverty line of an empty population");
    }
    const Ratio median = weighted_median(std::move(items));
    return Ratio{3 * median.num, 5 * median.den};
}

std::optional<double> RateResult::rate() const noexcept {
    if (total_weight_h == 0) {
        return std::nullopt;
    }
    return static_cast<double>(static_cast<long double>(below_weight_h) /
                               static_cast<long double>(total_weight_h));
}

struct RateAccess {
    static bool kernel_exact(const IncomeTable &t, const Ratio &line) {
        const long double lhs = static_cast<long double>(t.max_num_) * line.den;
        const long double rhs = static_cast<long double>(line.num < 0 ? -line.num : line.num) * t.max_den_;
        return lhs < kExactDoubleLimit && rhs < kExactDoubleLimit;
    }
};

RateResult poverty_rate(const IncomeTable &table, const Ratio &line, const PersonFilter &filter) {
    const auto persons = table.persons();
    std::vector<std::int64_t> weights(persons.size());
    RateResult r;
    for (std::size_t i = 0; i < persons.size(); ++i) {
        if (filter(persons[i])) {
            weights[i] = persons[i].weight_h;
            r.total_weight_h += weights[i];
        }
    }
    if (RateAccess::kernel_exact(table, line)) {
        r.below_weight_h = simd::weighted_below(table.value_num(), table.value_den(), weights,
                                                static_cast<double>(line.num),
                                                static_cast<double>(line.den));
    } else {
        for (std::size_t i = 0; i < persons.size(); ++i) {
            if (weights[i] != 0 && persons[i].equivalized < line) {
                r.below_weight_h += weights[i];
            }
        }
    }
    return r;
}

std::int64_t headcount_from_pp(double delta_pp, std::int64_t child_population) {
    if (child_population <= 0) {
        throw ValidationError("child population must be > 0");
    }
    return static_cast<std::int64_t>(std::llround(delta_pp / 100.0 * static_cast<double>(child_population)));
}

Ratio PovertyReport::line(Indicator i) const {
    switch (i) {
    case Indicator::relative:
        return lines.relative;
    case Indicator::abs_extreme:
        return Ratio{lines.absolute_extreme_low, 1};
    case Indicator::abs_upper:
        return Ratio{lines.absolute_upper_middle, 1};
    }
    return lines.relative;
}

PersonFilter child_filter() {
    return [](const PersonRecord &p) { return p.is_child(); };
}

PovertyReport poverty_report(const IncomeTable &table, Mkd absolute_extreme_low,
                             Mkd absolute_upper_middle) {
    if (!(absolute_extreme_low > 0 && absolute_extreme_low < absolute_upper_middle)) {
        throw ValidationError("absolute poverty lines must satisfy 0 < extreme_low < upper_middle");
    }
    PovertyReport rep;
    rep.lines = PovertyLines{relative_poverty_line(table), absolute_extreme_low, absolute_upper_middle};
    const auto children = child_filter();
    const PersonFilter everyone = [](const PersonRecord &) { return true; };
    for (auto ind : kIndicators) {
        auto &res = rep.indicators[static_cast<std::size_t>(ind)];
        res.child = poverty_rate(table, rep.line(ind), children);
        res.all = poverty_rate(table, rep.line(ind), everyone);
    }
    return rep;
}

} // namespace microsim
