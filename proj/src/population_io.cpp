#include "microsim/population_io.hpp"

#include "microsim/csv.hpp"
#include "microsim/error.hpp"

#include <unordered_set>

namespace microsim {

namespace {

std::string month_column(IncomeSource s, int month) {
    std::string col(to_string(s));
    col += month < 10 ? "_m0" : "_m";
    col += std::to_string(month);
    return col;
}

std::string opt_int(const std::optional<int> &v) { return v ? std::to_string(*v) : std::string{}; }

std::string flag(bool b) { return b ? "1" : "0"; }

template <typename Parse> auto parse_cell(const csv::Table &t, std::size_t r, std::size_t c, Parse &&p) {
    try {
        return p(t.cell(r, c));
    } catch (const ValidationError &e) {
        t.fail(r, c, e.what());
    }
}

std::vector<Household> read_households(const csv::Table &t) {
    const auto c_id = t.column("household_id");
    const auto c_w = t.column("survey_weight");
    const auto c_res = t.column("owns_residence");
    const auto c_other = t.column("owns_other_real_estate");
    const auto c_car = t.column("car_age_years");
    const auto c_land = t.column("land_parcel_m2");
    std::vector<Household> out;
    out.reserve(t.rows());
    for (std::size_t r = 0; r < t.rows(); ++r) {
        Household h;
        h.household_id = t.integer(r, c_id);
        h.survey_weight = parse_cell(t, r, c_w, [](const std::string &s) { return SurveyWeight::parse(s); });
        if (h.survey_weight.hundredths() <= 0) {
            t.fail(r, c_w, "survey_weight must be > 0");
        }
        h.owns_residence = t.boolean(r, c_res);
        h.owns_other_real_estate = t.boolean(r, c_other);
        if (auto v = t.optional_integer(r, c_car)) {
            if (*v < 0) {
                t.fail(r, c_car, "must be >= 0");
            }
            h.car_age_years = static_cast<int>(*v);
        }
        if (auto v = t.optional_integer(r, c_land)) {
            if (*v < 0) {
                t.fail(r, c_land, "must be >= 0");
            }
            h.land_parcel_m2 = static_cast<int>(*v);
        }
        out.push_back(std::move(h));
    }
    return out;
}

std::vector<Person> read_persons(const csv::Table &t,
                                 const std::unordered_set<HouseholdId> &household_ids) {
    const auto c_pid = t.column("person_id");
    const auto c_hid = t.column("household_id");
    const auto c_age = t.column("age");
    const auto c_sex = t.column("sex");
    const auto c_status = t.column("labor_status");
    const auto c_nace = t.column("nace2");
    const auto c_inf = t.column("informal_wage");
    const auto c_edu_pub = t.column("in_public_education");
    const auto c_sa = t.column("social_assistance_recipient");
    const auto c_spec = t.column("special_category");
    const auto c_edu = t.column("education_level");
    std::array<std::array<std::size_t, kMonths>, kIncomeSourceCount> c_income{};
    for (auto s : kIncomeSources) {
        for (int m = 1; m <= kMonths; ++m) {
            c_income[static_cast<std::size_t>(s)][m - 1] = t.column(month_column(s, m));
        }
    }

    std::vector<Person> out;
    out.reserve(t.rows());
    for (std::size_t r = 0; r < t.rows(); ++r) {
        Person p;
        p.person_id = t.integer(r, c_pid);
        p.household_id = t.integer(r, c_hid);
        if (!household_ids.contains(p.household_id)) {
            t.fail(r, c_hid, "dangling household_id " + std::to_string(p.household_id));
        }
        const auto age = t.integer(r, c_age);
        if (age < 0 || age > kMaxAge) {
            t.fail(r, c_age, "age out of range [0, 110]");
        }
        p.age = static_cast<int>(age);
        p.sex = parse_cell(t, r, c_sex, [](const std::string &s) { return parse_sex(s); });
        p.labor_status =
            parse_cell(t, r, c_status, [](const std::string &s) { return parse_labor_status(s); });
        if (auto v = t.optional_integer(r, c_nace)) {
            p.nace2 = static_cast<int>(*v);
        }
        p.informal_wage = t.boolean(r, c_inf);
        p.in_public_education = t.boolean(r, c_edu_pub);
        p.social_assistance_recipient = t.boolean(r, c_sa);
        p.special_category = t.boolean(r, c_spec);
        p.education = parse_cell(t, r, c_edu, [](const std::string &s) { return parse_education(s); });
        for (auto s : kIncomeSources) {
            for (int m = 0; m < kMonths; ++m) {
                const auto c = c_income[static_cast<std::size_t>(s)][m];
                const auto v = t.integer(r, c);
                if (v < 0) {
                    t.fail(r, c, "negative income");
                }
                p.stream(s)[m] = v;
            }
        }
        if (auto v = person_violation(p); !v.empty()) {
            t.fail(r, c_pid, v);
        }
        out.push_back(std::move(p));
    }
    return out;
}

Population build(const csv::Table &persons, const csv::Table &households, int base_year) {
    auto hh = read_households(households);
    std::unordered_set<HouseholdId> ids;
    for (const auto &h : hh) {
        ids.insert(h.household_id);
    }
    auto ps = read_persons(persons, ids);
    return Population(std::move(ps), std::move(hh), base_year, Provenance{});
}

} // namespace

std::vector<std::string> persons_header() {
    std::vector<std::string> h{"person_id",          "household_id",
                               "age",                "sex",
                               "labor_status",       "nace2",
                               "informal_wage",      "in_public_education",
                               "social_assistance_recipient", "special_category",
                               "education_level"};
    for (auto s : kIncomeSources) {
        for (int m = 1; m <= kMonths; ++m) {
            h.push_back(month_column(s, m));
        }
    }
    return h;
}

std::vector<std::string> households_header() {
    return {"household_id",           "survey_weight", "owns_residence",
            "owns_other_real_estate", "car_age_years", "land_parcel_m2"};
}

Population load_population(const std::filesystem::path &persons_file,
                           const std::filesystem::path &households_file, int base_year) {
    return build(csv::Table::read(persons_file), csv::Table::read(households_file), base_year);
}

Population parse_population(std::string_view persons_csv, std::string_view households_csv,
                            int base_year) {
    return build(csv::Table::parse(persons_csv, "persons.csv"),
                 csv::Table::parse(households_csv, "households.csv"), base_year);
}

std::string persons_to_csv(const Population &pop) {
    csv::Writer w(persons_header());
    for (const auto &p : pop.persons()) {
        std::vector<std::string> f{std::to_string(p.person_id),
                                   std::to_string(p.household_id),
                                   std::to_string(p.age),
                                   std::string(to_string(p.sex)),
                                   std::string(to_string(p.labor_status)),
                                   opt_int(p.nace2),
                                   flag(p.informal_wage),
                                   flag(p.in_public_education),
                                   flag(p.social_assistance_recipient),
                                   flag(p.special_category),
                                   std::string(to_string(p.education))};
        for (const auto &stream : p.income) {
            for (Mkd v : stream) {
                f.push_back(std::to_string(v));
            }
        }
        w.row(std::move(f));
    }
    return w.str();
}

std::string households_to_csv(const Population &pop) {
    csv::Writer w(households_header());
    for (const auto &h : pop.households()) {
        w.row({std::to_string(h.household_id), h.survey_weight.to_string(), flag(h.owns_residence),
               flag(h.owns_other_real_estate), opt_int(h.car_age_years), opt_int(h.land_parcel_m2)});
    }
    return w.str();
}

void save_population(const Population &pop, const std::filesystem::path &dir) {
    std::filesystem::create_directories(dir);
    csv::write_text_file(dir / "persons.csv", persons_to_csv(pop));
    csv::write_text_file(dir / "households.csv", households_to_csv(pop));
}

} // namespace microsim
