#pragma once

#include "microsim/population.hpp"

#include <nlohmann/json.hpp>

#include <array>
#include <cstdint>
#include <map>
#include <vector>

namespace microsim {

/// Log-normal monthly amount given by its median and log standard deviation.
struct LogNormal {
    double median{0.0};
    double sigma{0.0};
};

/// Parametric description of a synthetic survey population. Defaults are
/// declared modelling choices, not statements about any real survey.
struct SynthConfig {
    std::size_t households{10000};
    /// P(size = i + 1).
    std::vector<double> household_size_probs{0.12, 0.20, 0.20, 0.24, 0.13, 0.07, 0.04};
    /// Target share of persons under 18.
    double child_share{0.22};
    /// Declared tolerance on achieved marginal shares.
    double share_tolerance{0.01};

    /// Labor status of adults; must sum to 1 over the non-child statuses.
    std::map<LaborStatus, double> adult_status_shares{
        {LaborStatus::employee, 0.34},          {LaborStatus::self_employed, 0.13},
        {LaborStatus::unemployed_active, 0.09}, {LaborStatus::unemployed_passive, 0.05},
        {LaborStatus::pensioner, 0.21},         {LaborStatus::student, 0.06},
        {LaborStatus::inactive, 0.12},
    };
    /// Relative propensity of each status among adults living with
    /// children (1 when absent). Adults in childless households are drawn
    /// so that the overall status shares still match adult_status_shares.
    /// Working adults living with children are aged 24 to 55.
    std::map<LaborStatus, double> child_household_status_bias{
        {LaborStatus::employee, 0.9},          {LaborStatus::self_employed, 2.2},
        {LaborStatus::unemployed_active, 0.8},
        {LaborStatus::unemployed_passive, 0.6}, {LaborStatus::pensioner, 0.1},
        {LaborStatus::student, 0.2},           {LaborStatus::inactive, 0.5},
    };
    double informal_share{0.12};

    LogNormal wage{32000.0, 0.42};
    LogNormal informal_wage{16000.0, 0.45};
    LogNormal self_employment{16000.0, 0.50};
    LogNormal pension{15500.0, 0.35};
    LogNormal rent{5000.0, 0.8};
    LogNormal interhousehold{4000.0, 0.6};
    double rent_probability{0.07};
    double interhousehold_probability{0.12};
    /// Lower bound of a formal wage as a fraction of the sector median.
    double wage_floor_ratio{0.45};

    /// Employment weight per NACE division (89 entries, order of
    /// nace::divisions()); empty selects the built-in profile.
    std::vector<double> nace2_weights;
    /// Wage level multiplier per section A..U (21 entries); empty selects the
    /// built-in profile.
    std::vector<double> section_wage_levels;
    /// Self-employment weight per section A..U (21 entries); empty selects
    /// the built-in profile. The division within the section follows
    /// nace2_weights.
    std::vector<double> selfemp_section_weights;

    double owns_residence_probability{0.85};
    double other_real_estate_probability{0.06};
    double car_probability{0.45};
    int car_age_max{25};
    double land_probability{0.22};
    LogNormal land_m2{350.0, 0.6};

    std::array<double, 3> education_shares{0.28, 0.52, 0.20};
    /// Wage and self-employment level multiplier by education.
    std::array<double, 3> education_income_levels{0.8, 1.0, 1.35};
    /// Tilt sector choice by education (built-in profile: less educated
    /// workers lean to agriculture, manufacturing, construction, trade and
    /// services; graduates to ICT, finance, professions and public services).
    /// The mix over all levels keeps the division weights.
    bool education_sector_tilt{true};
    double special_category_probability{0.01};
    double child_enrolment_probability{0.95};
    double student_enrolment_probability{0.90};

    double weight_min{40.0};
    double weight_max{80.0};

    /// Throws ValidationError for infeasible configurations.
    void validate() const;
    /// Probability that a non-first member is a child, derived from child_share.
    double child_member_probability() const;
};

SynthConfig synth_config_from_json(const nlohmann::json &j);
nlohmann::json to_json(const SynthConfig &c);

/// Deterministic for a fixed (config, seed).
Population generate_synthetic(const SynthConfig &config, std::uint64_t seed, int base_year = 2019);

struct SynthSummary {
    double child_share{0.0};
    std::map<LaborStatus, double> adult_status_shares;
};

/// Unweighted achieved marginals of a population.
SynthSummary summarize(const Population &pop);

} // namespace microsim
