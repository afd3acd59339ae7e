#include "microsim/synthetic.hpp"

#include "json_util.hpp"
#include "microsim/error.hpp"
#include "microsim/nace.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

namespace microsim {

namespace {

// Distribution transforms are written out here because the std:: ones are
// implementation-defined and would make populations differ across
// standard libraries.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_{seed} {}

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double normal() {
        if (spare_) {
            const double v = *spare_;
            spare_.reset();
            return v;
        }
        double u1 = uniform();
        while (u1 <= 0.0) {
            u1 = uniform();
        }
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(2.0 * std::numbers::pi * u2);
        return r * std::cos(2.0 * std::numbers::pi * u2);
    }

    double lognormal(const LogNormal &d) { return d.median * std::exp(d.sigma * normal()); }

    bool bernoulli(double p) { return uniform() < p; }

    int uniform_int(int lo, int hi) {
        const auto span = static_cast<double>(hi - lo + 1);
        return lo + std::min(hi - lo, static_cast<int>(uniform() * span));
    }

    std::size_t categorical(const std::vector<double> &weights, double total) {
        const double u = uniform() * total;
        double acc = 0.0;
        for (std::size_t i = 0; i < weights.size(); ++i) {
            acc += weights[i];
            if (u < acc && weights[i] > 0.0) {
                return i;
            }
        }
        for (std::size_t i = weights.size(); i-- > 0;) {
            if (weights[i] > 0.0) {
                return i;
            }
        }
        return 0;
    }

  private:
    std::mt19937_64 engine_;
    std::optional<double> spare_;
};

std::vector<double> default_nace_weights() {
    std::vector<double> w(nace::kDivisionCount, 1.0);
    const std::map<int, double> overrides{
        {0, 0.5},  {1, 8.0},  {10, 3.0}, {13, 2.0}, {14, 5.0}, {15, 2.0}, {25, 2.0}, {29, 2.0},
        {41, 3.0}, {43, 3.0}, {45, 2.0}, {46, 5.0}, {47, 9.0}, {49, 4.0}, {55, 1.5}, {56, 4.0},
        {62, 2.0}, {64, 2.0}, {84, 7.0}, {85, 6.0}, {86, 4.0}, {96, 2.0}, {97, 0.2}, {98, 0.2},
        {99, 0.2},
    };
    for (const auto &[code, weight] : overrides) {
        w[*nace::division_index(code)] = weight;
    }
    return w;
}

std::vector<double> default_section_levels() {
    //       A    B    C     D    E     F    G     H     I    J    K
    return {0.70, 1.10, 0.85, 1.40, 0.95, 0.90, 0.85, 0.95, 0.70, 1.60, 1.50,
            // L   M    N    O    P    Q    R    S     T    U
            1.00, 1.30, 0.80, 1.20, 1.10, 1.10, 0.80, 0.75, 0.60, 1.20};
}

std::vector<double> default_selfemp_sections() {
    //       A     B    C    D    E    F    G     H    I    J    K
    return {25.0, 0.3, 7.0, 0.1, 0.3, 8.0, 22.0, 9.0, 9.0, 2.0, 0.5,
            // L  M    N    O    P    Q    R    S    T    U
            0.5, 4.0, 1.5, 0.0, 0.8, 1.5, 1.0, 6.0, 0.2, 0.0};
}

// Multiplier on a section's employment weight per education level.
double sector_tilt(Education e, char section) {
    static const std::string low_skill = "ACFGINST";
    static const std::string high_skill = "JKMOPQ";
    const bool low = low_skill.find(section) != std::string::npos;
    const bool high = high_skill.find(section) != std::string::npos;
    switch (e) {
    case Education::primary_or_less:
        return low ? 1.4 : (high ? 0.5 : 1.0);
    case Education::tertiary_plus:
        return low ? 0.6 : (high ? 2.0 : 1.0);
    default:
        return 1.0;
    }
}

// Division weights per education level. Each level leans toward its sectors
// while the mix over all levels stays at the configured division weights
// (iterative proportional scaling).
std::array<std::vector<double>, 3> tilted_division_weights(const std::vector<double> &nace_w,
                                                           const std::array<double, 3> &shares) {
    const std::size_t n = nace_w.size();
    double total = 0.0;
    for (double w : nace_w) {
        total += w;
    }
    std::array<std::vector<double>, 3> tilt;
    for (std::size_t e = 0; e < 3; ++e) {
        tilt[e].assign(n, 1.0);
        for (std::size_t i = 0; i < n; ++i) {
            if (const auto sec = nace::section_of(nace::divisions()[i])) {
                tilt[e][i] = sector_tilt(static_cast<Education>(e), *sec);
            }
        }
    }
    std::vector<double> c(n, 1.0);
    std::array<std::vector<double>, 3> out;
    for (int iter = 0; iter < 200; ++iter) {
        std::vector<double> marginal(n, 0.0);
        for (std::size_t e = 0; e < 3; ++e) {
            out[e].assign(n, 0.0);
            double z = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                out[e][i] = nace_w[i] * c[i] * tilt[e][i];
                z += out[e][i];
            }
            for (std::size_t i = 0; i < n; ++i) {
                marginal[i] += shares[e] * out[e][i] / z;
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (marginal[i] > 0.0) {
                c[i] *= (nace_w[i] / total) / marginal[i];
            }
        }
    }
    return out;
}

double positive_sum(const std::vector<double> &v) {
    double s = 0.0;
    for (double x : v) {
        if (x < 0.0 || !std::isfinite(x)) {
            throw ValidationError("synthetic config: negative or non-finite weight");
        }
        s += x;
    }
    return s;
}

void check_probability(double p, const char *name) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw ValidationError(std::string("synthetic config: ") + name + " must be in [0, 1]");
    }
}

void check_lognormal(const LogNormal &d, const char *name) {
    if (!(d.median > 0.0 && d.sigma >= 0.0)) {
        throw ValidationError(std::string("synthetic config: ") + name +
                              " needs median > 0 and sigma >= 0");
    }
}

double mean_size(const SynthConfig &c) {
    double total = 0.0;
    double mean = 0.0;
    for (std::size_t i = 0; i < c.household_size_probs.size(); ++i) {
        total += c.household_size_probs[i];
        mean += static_cast<double>(i + 1) * c.household_size_probs[i];
    }
    return mean / total;
}

Mkd money(double v) { return std::max<Mkd>(0, static_cast<Mkd>(std::llround(v))); }

void set_flat(Person &p, IncomeSource s, Mkd monthly) { p.stream(s).fill(monthly); }

} // namespace

void SynthConfig::validate() const {
    if (household_size_probs.empty()) {
        throw ValidationError("synthetic config: empty household size distribution");
    }
    const double size_total = positive_sum(household_size_probs);
    if (std::abs(size_total - 1.0) > 1e-9) {
        throw ValidationError("synthetic config: household size probabilities must sum to 1");
    }
    double status_total = 0.0;
    if (adult_status_shares.empty()) {
        throw ValidationError("synthetic config: empty adult status distribution");
    }
    for (const auto &[status, share] : adult_status_shares) {
        if (status == LaborStatus::child) {
            throw ValidationError("synthetic config: 'child' is not an adult status");
        }
        if (share < 0.0) {
            throw ValidationError("synthetic config: negative status share");
        }
        status_total += share;
    }
    if (std::abs(status_total - 1.0) > 1e-9) {
        throw ValidationError("synthetic config: adult status shares must sum to 1");
    }
    check_probability(child_share, "child_share");
    check_probability(informal_share, "informal_share");
    check_probability(rent_probability, "rent_probability");
    check_probability(interhousehold_probability, "interhousehold_probability");
    check_probability(owns_residence_probability, "owns_residence_probability");
    check_probability(other_real_estate_probability, "other_real_estate_probability");
    check_probability(car_probability, "car_probability");
    check_probability(land_probability, "land_probability");
    check_probability(special_category_probability, "special_category_probability");
    check_probability(child_enrolment_probability, "child_enrolment_probability");
    check_probability(student_enrolment_probability, "student_enrolment_probability");
    if (!(share_tolerance > 0.0)) {
        throw ValidationError("synthetic config: share_tolerance must be > 0");
    }
    check_lognormal(wage, "wage");
    check_lognormal(informal_wage, "informal_wage");
    check_lognormal(self_employment, "self_employment");
    check_lognormal(pension, "pension");
    check_lognormal(rent, "rent");
    check_lognormal(interhousehold, "interhousehold");
    check_lognormal(land_m2, "land_m2");
    if (!nace2_weights.empty()) {
        if (nace2_weights.size() != nace::kDivisionCount || positive_sum(nace2_weights) <= 0.0) {
            throw ValidationError("synthetic config: nace2_weights needs 89 weights with a positive sum");
        }
    }
    if (!selfemp_section_weights.empty() &&
        (selfemp_section_weights.size() != nace::kSectionCount ||
         positive_sum(selfemp_section_weights) <= 0.0)) {
        throw ValidationError("synthetic config: selfemp_section_weights needs 21 weights with a positive sum");
    }
    if (!section_wage_levels.empty() && section_wage_levels.size() != nace::kSectionCount) {
        throw ValidationError("synthetic config: section_wage_levels needs 21 entries");
    }
    for (double l : section_wage_levels) {
        if (!(l > 0.0)) {
            throw ValidationError("synthetic config: section wage levels must be > 0");
        }
    }
    if (positive_sum({education_shares.begin(), education_shares.end()}) <= 0.0 ||
        std::abs(education_shares[0] + education_shares[1] + education_shares[2] - 1.0) > 1e-9) {
        throw ValidationError("synthetic config: education shares must sum to 1");
    }
    for (double l : education_income_levels) {
        if (!(l > 0.0) || !std::isfinite(l)) {
            throw ValidationError("synthetic config: education income levels must be > 0");
        }
    }
    if (!(weight_min > 0.0 && weight_max >= weight_min)) {
        throw ValidationError("synthetic config: need 0 < weight_min <= weight_max");
    }
    if (car_age_max < 0) {
        throw ValidationError("synthetic config: car_age_max must be >= 0");
    }
    if (!(wage_floor_ratio >= 0.0)) {
        throw ValidationError("synthetic config: wage_floor_ratio must be >= 0");
    }
    for (const auto &[status, bias] : child_household_status_bias) {
        if (!(bias >= 0.0) || !std::isfinite(bias)) {
            throw ValidationError("synthetic config: status bias must be >= 0");
        }
    }
    child_member_probability();
}

double SynthConfig::child_member_probability() const {
    const double m = mean_size(*this);
    if (child_share == 0.0) {
        return 0.0;
    }
    if (m <= 1.0) {
        throw ValidationError("synthetic config: child_share > 0 needs households larger than one");
    }
    const double p = child_share * m / (m - 1.0);
    if (p > 1.0) {
        throw ValidationError("synthetic config: child_share unreachable with this size distribution");
    }
    return p;
}

namespace {

// Household shape drawn before any person attribute.
struct Shape {
    Household household;
    std::vector<bool> child;
    bool has_child{false};
};

// Status distributions for adults with and without children in the
// household, such that their mix reproduces the configured shares.
std::pair<std::vector<double>, std::vector<double>>
split_status_weights(const std::vector<LaborStatus> &statuses, const std::vector<double> &shares,
                     const std::map<LaborStatus, double> &bias, double adults_with_children,
                     double adults_without) {
    const std::size_t n = statuses.size();
    const double adults = adults_with_children + adults_without;
    std::vector<double> pull(n);
    std::vector<double> target(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto it = bias.find(statuses[i]);
        pull[i] = shares[i] * (it == bias.end() ? 1.0 : it->second);
        target[i] = shares[i] * adults;
    }
    // Expected counts among adults with children, proportional to the pull
    // but never above a status's overall expected count. Capped statuses
    // hand their excess to the others until nothing exceeds its cap.
    std::vector<double> with(n, 0.0);
    std::vector<bool> capped(n, false);
    for (std::size_t round = 0; round <= n; ++round) {
        double free_pull = 0.0;
        double left = adults_with_children;
        for (std::size_t i = 0; i < n; ++i) {
            if (capped[i]) {
                left -= target[i];
            } else {
                free_pull += pull[i];
            }
        }
        bool changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            if (capped[i]) {
                with[i] = target[i];
                continue;
            }
            with[i] = free_pull > 0.0 ? std::max(0.0, left) * pull[i] / free_pull : 0.0;
            if (with[i] > target[i]) {
                capped[i] = true;
                changed = true;
            }
        }
        if (!changed) {
            break;
        }
    }
    std::vector<double> without(n);
    for (std::size_t i = 0; i < n; ++i) {
        without[i] = std::max(0.0, target[i] - with[i]);
    }
    if (positive_sum(with) <= 0.0) {
        with = shares;
    }
    if (positive_sum(without) <= 0.0) {
        without = shares;
    }
    return {with, without};
}

} // namespace

Population generate_synthetic(const SynthConfig &config, std::uint64_t seed, int base_year) {
    config.validate();
    Rng rng(seed);

    const auto nace_w = config.nace2_weights.empty() ? default_nace_weights() : config.nace2_weights;
    const auto levels =
        config.section_wage_levels.empty() ? default_section_levels() : config.section_wage_levels;
    const auto se_sections = config.selfemp_section_weights.empty() ? default_selfemp_sections()
                                                                     : config.selfemp_section_weights;
    const double se_total = positive_sum(se_sections);
    // Division weights within each section, for the self-employed.
    std::vector<std::vector<double>> within(nace::kSectionCount,
                                            std::vector<double>(nace::kDivisionCount, 0.0));
    for (std::size_t i = 0; i < nace::kDivisionCount; ++i) {
        if (const auto sec = nace::section_of(nace::divisions()[i])) {
            within[*nace::section_index(*sec)][i] = nace_w[i] > 0.0 ? nace_w[i] : 1e-9;
        }
    }
    const auto edu_nace_w = config.education_sector_tilt
                                ? tilted_division_weights(nace_w, config.education_shares)
                                : std::array<std::vector<double>, 3>{nace_w, nace_w, nace_w};
    std::array<double, 3> edu_nace_total{};
    for (std::size_t e = 0; e < 3; ++e) {
        edu_nace_total[e] = positive_sum(edu_nace_w[e]);
    }
    std::vector<double> within_total(nace::kSectionCount);
    for (std::size_t k = 0; k < nace::kSectionCount; ++k) {
        within_total[k] = positive_sum(within[k]);
    }
    const double size_total = positive_sum(config.household_size_probs);
    const double p_child = config.child_member_probability();
    const std::vector<double> edu_w{config.education_shares.begin(), config.education_shares.end()};

    const auto level_of = [&](int division) {
        const auto section = nace::section_of(division);
        return section ? levels[*nace::section_index(*section)] : 1.0;
    };

    // Pass 1: household records and who is a child.
    std::vector<Shape> shapes(config.households);
    double adults_with_children = 0.0;
    double adults_without = 0.0;
    for (std::size_t h = 0; h < config.households; ++h) {
        auto &hh = shapes[h].household;
        hh.household_id = static_cast<HouseholdId>(h + 1);
        const auto wh = static_cast<std::int64_t>(std::llround(
            (config.weight_min + rng.uniform() * (config.weight_max - config.weight_min)) * 100.0));
        hh.survey_weight = SurveyWeight::from_hundredths(std::max<std::int64_t>(1, wh));
        hh.owns_residence = rng.bernoulli(config.owns_residence_probability);
        hh.owns_other_real_estate = rng.bernoulli(config.other_real_estate_probability);
        if (rng.bernoulli(config.car_probability)) {
            hh.car_age_years = rng.uniform_int(0, config.car_age_max);
        }
        if (rng.bernoulli(config.land_probability)) {
            hh.land_parcel_m2 = static_cast<int>(std::llround(rng.lognormal(config.land_m2)));
        }
        const std::size_t size = rng.categorical(config.household_size_probs, size_total) + 1;
        auto &child = shapes[h].child;
        child.resize(size, false);
        for (std::size_t k = 1; k < size; ++k) {
            child[k] = rng.bernoulli(p_child);
        }
        const auto kids = static_cast<double>(std::count(child.begin(), child.end(), true));
        shapes[h].has_child = kids > 0;
        (kids > 0 ? adults_with_children : adults_without) += static_cast<double>(size) - kids;
    }

    std::vector<LaborStatus> statuses;
    std::vector<double> shares;
    for (const auto &[s, w] : config.adult_status_shares) {
        statuses.push_back(s);
        shares.push_back(w);
    }
    const auto [with_w, without_w] = split_status_weights(
        statuses, shares, config.child_household_status_bias, adults_with_children, adults_without);
    const double with_total = positive_sum(with_w);
    const double without_total = positive_sum(without_w);

    // Pass 2: persons.
    std::vector<Person> persons;
    std::vector<Household> households;
    households.reserve(config.households);
    PersonId next_person = 1;
    for (auto &shape : shapes) {
        auto &hh = shape.household;
        const std::size_t first_person = persons.size();
        for (std::size_t k = 0; k < shape.child.size(); ++k) {
            Person p;
            p.person_id = next_person++;
            p.household_id = hh.household_id;
            p.sex = rng.bernoulli(0.5) ? Sex::female : Sex::male;
            if (shape.child[k]) {
                p.age = rng.uniform_int(0, kAdultAge - 1);
                p.labor_status = LaborStatus::child;
                p.in_public_education = p.age >= 6 && rng.bernoulli(config.child_enrolment_probability);
                p.education = Education::primary_or_less;
                persons.push_back(std::move(p));
                continue;
            }
            p.labor_status = shape.has_child ? statuses[rng.categorical(with_w, with_total)]
                                             : statuses[rng.categorical(without_w, without_total)];
            p.education = static_cast<Education>(rng.categorical(edu_w, 1.0));
            // Working-age adults living with children are drawn as parents.
            const int bottom = shape.has_child ? 24 : 18;
            const int top = shape.has_child ? 55 : 64;
            switch (p.labor_status) {
            case LaborStatus::employee: {
                p.age = rng.uniform_int(bottom, top);
                const auto e = static_cast<std::size_t>(p.education);
                p.nace2 = nace::divisions()[rng.categorical(edu_nace_w[e], edu_nace_total[e])];
                p.informal_wage = rng.bernoulli(config.informal_share);
                const double level = level_of(*p.nace2) * config.education_income_levels[e];
                double w = 0.0;
                if (p.informal_wage) {
                    w = rng.lognormal(config.informal_wage) * level;
                } else {
                    const double median = config.wage.median * level;
                    w = std::max(rng.lognormal({median, config.wage.sigma}),
                                 config.wage_floor_ratio * median);
                }
                set_flat(p, IncomeSource::wage, std::max<Mkd>(1, money(w)));
                break;
            }
            case LaborStatus::self_employed: {
                p.age = rng.uniform_int(bottom, top);
                const auto section = rng.categorical(se_sections, se_total);
                p.nace2 = nace::divisions()[rng.categorical(within[section], within_total[section])];
                const double level =
                    level_of(*p.nace2) * config.education_income_levels[static_cast<std::size_t>(p.education)];
                set_flat(p, IncomeSource::self_employment,
                         std::max<Mkd>(1, money(rng.lognormal(config.self_employment) * level)));
                break;
            }
            case LaborStatus::pensioner:
                p.age = rng.uniform_int(58, 85);
                set_flat(p, IncomeSource::pension, money(rng.lognormal(config.pension)));
                break;
            case LaborStatus::student:
                p.age = rng.uniform_int(18, 27);
                p.in_public_education = rng.bernoulli(config.student_enrolment_probability);
                break;
            case LaborStatus::inactive:
                p.age = rng.uniform_int(18, shape.has_child ? 60 : 75);
                break;
            default:
                p.age = rng.uniform_int(bottom, top);
                break;
            }
            p.special_category = rng.bernoulli(config.special_category_probability);
            persons.push_back(std::move(p));
        }
        auto &head = persons[first_person];
        if (rng.bernoulli(config.rent_probability)) {
            set_flat(head, IncomeSource::capital_rent, money(rng.lognormal(config.rent)));
        }
        if (rng.bernoulli(config.interhousehold_probability)) {
            set_flat(head, IncomeSource::interhousehold_transfers,
                     money(rng.lognormal(config.interhousehold)));
        }
        households.push_back(std::move(hh));
    }
    return Population(std::move(persons), std::move(households), base_year, Provenance{true, seed});
}

SynthSummary summarize(const Population &pop) {
    SynthSummary s;
    std::size_t children = 0;
    std::size_t adults = 0;
    for (const auto &p : pop.persons()) {
        if (p.is_child()) {
            ++children;
        } else {
            ++adults;
            s.adult_status_shares[p.labor_status] += 1.0;
        }
    }
    if (!pop.persons().empty()) {
        s.child_share = static_cast<double>(children) / static_cast<double>(pop.persons().size());
    }
    for (auto &[status, v] : s.adult_status_shares) {
        v /= static_cast<double>(adults);
    }
    return s;
}

namespace {

void read_lognormal(detail::StrictObject &o, const std::string &key, LogNormal &d) {
    if (const auto *j = o.child(key)) {
        detail::StrictObject lo(*j, o.path(key));
        lo.read("median", d.median);
        lo.read("sigma", d.sigma);
        lo.finish();
    }
}

} // namespace

SynthConfig synth_config_from_json(const nlohmann::json &j) {
    SynthConfig c;
    detail::StrictObject o(j, "synthetic");
    o.read("households", c.households);
    o.read("household_size_probs", c.household_size_probs);
    o.read("child_share", c.child_share);
    o.read("share_tolerance", c.share_tolerance);
    if (const auto *s = o.child("adult_status_shares")) {
        detail::StrictObject so(*s, o.path("adult_status_shares"));
        c.adult_status_shares.clear();
        for (const auto &[k, v] : s->items()) {
            double share = 0.0;
            so.read(k, share);
            c.adult_status_shares[parse_labor_status(k)] = share;
        }
        so.finish();
    }
    if (const auto *b = o.child("child_household_status_bias")) {
        detail::StrictObject bo(*b, o.path("child_household_status_bias"));
        c.child_household_status_bias.clear();
        for (const auto &[k, v] : b->items()) {
            double bias = 1.0;
            bo.read(k, bias);
            c.child_household_status_bias[parse_labor_status(k)] = bias;
        }
        bo.finish();
    }
    o.read("informal_share", c.informal_share);
    read_lognormal(o, "wage", c.wage);
    read_lognormal(o, "informal_wage", c.informal_wage);
    read_lognormal(o, "self_employment", c.self_employment);
    read_lognormal(o, "pension", c.pension);
    read_lognormal(o, "rent", c.rent);
    read_lognormal(o, "interhousehold", c.interhousehold);
    o.read("rent_probability", c.rent_probability);
    o.read("interhousehold_probability", c.interhousehold_probability);
    o.read("wage_floor_ratio", c.wage_floor_ratio);
    o.read("nace2_weights", c.nace2_weights);
    o.read("section_wage_levels", c.section_wage_levels);
    o.read("selfemp_section_weights", c.selfemp_section_weights);
    o.read("owns_residence_probability", c.owns_residence_probability);
    o.read("other_real_estate_probability", c.other_real_estate_probability);
    o.read("car_probability", c.car_probability);
    o.read("car_age_max", c.car_age_max);
    o.read("land_probability", c.land_probability);
    read_lognormal(o, "land_m2", c.land_m2);
    o.read("education_shares", c.education_shares);
    o.read("education_income_levels", c.education_income_levels);
    o.read("education_sector_tilt", c.education_sector_tilt);
    o.read("special_category_probability", c.special_category_probability);
    o.read("child_enrolment_probability", c.child_enrolment_probability);
    o.read("student_enrolment_probability", c.student_enrolment_probability);
    o.read("weight_min", c.weight_min);
    o.read("weight_max", c.weight_max);
    o.finish();
    c.validate();
    return c;
}

nlohmann::json to_json(const SynthConfig &c) {
    const auto ln = [](const LogNormal &d) {
        return nlohmann::json{{"median", d.median}, {"sigma", d.sigma}};
    };
    nlohmann::json shares = nlohmann::json::object();
    for (const auto &[s, v] : c.adult_status_shares) {
        shares[std::string(to_string(s))] = v;
    }
    nlohmann::json bias = nlohmann::json::object();
    for (const auto &[s, v] : c.child_household_status_bias) {
        bias[std::string(to_string(s))] = v;
    }
    return nlohmann::json{
        {"households", c.households},
        {"household_size_probs", c.household_size_probs},
        {"child_share", c.child_share},
        {"share_tolerance", c.share_tolerance},
        {"adult_status_shares", shares},
        {"child_household_status_bias", bias},
        {"informal_share", c.informal_share},
        {"wage", ln(c.wage)},
        {"informal_wage", ln(c.informal_wage)},
        {"self_employment", ln(c.self_employment)},
        {"pension", ln(c.pension)},
        {"rent", ln(c.rent)},
        {"interhousehold", ln(c.interhousehold)},
        {"rent_probability", c.rent_probability},
        {"interhousehold_probability", c.interhousehold_probability},
        {"wage_floor_ratio", c.wage_floor_ratio},
        {"nace2_weights", c.nace2_weights},
        {"section_wage_levels", c.section_wage_levels},
        {"selfemp_section_weights", c.selfemp_section_weights},
        {"owns_residence_probability", c.owns_residence_probability},
        {"other_real_estate_probability", c.other_real_estate_probability},
        {"car_probability", c.car_probability},
        {"car_age_max", c.car_age_max},
        {"land_probability", c.land_probability},
        {"land_m2", ln(c.land_m2)},
        {"education_shares", c.education_shares},
        {"education_income_levels", c.education_income_levels},
        {"education_sector_tilt", c.education_sector_tilt},
        {"special_category_probability", c.special_category_probability},
        {"child_enrolment_probability", c.child_enrolment_probability},
        {"student_enrolment_probability", c.student_enrolment_probability},
        {"weight_min", c.weight_min},
        {"weight_max", c.weight_max},
    };
}

} // namespace microsim
