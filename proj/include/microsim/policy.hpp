#pragma once

#include "microsim/money.hpp"

#include <nlohmann/json.hpp>

#include <string_view>

namespace microsim {

enum class GmaRegime { pre_covid, relaxed };

std::string_view to_string(GmaRegime r);
GmaRegime parse_gma_regime(std::string_view s);

/// Within-GMA household scale: threshold = base * (first_adult +
/// additional_adult * (adults - 1) + child * children).
struct GmaScale {
    double first_adult{1.0};
    double additional_adult{0.5};
    double child{0.3};
};

struct OneOffMay {
    Mkd adult_sa_amount{9000};
    Mkd low_wage_amount{3000};
    Mkd low_wage_cap{15000};
    Mkd student_amount{3000};
    int student_age_min{16};
    int student_age_max{29};
};

struct OneOffDec {
    Mkd passive_jobseeker_cap{15000};
    Mkd pension_cap{15000};
    /// Not published alongside the rule; placeholder default.
    Mkd amount{3000};
};

struct TbiParams {
    /// Monthly transfer as a fraction of the median per-capita income.
    double transfer_fraction{0.25};
    /// Vulnerability threshold as a multiple of the relative poverty line.
    double vulnerability_multiplier{1.2};
};

/// Every rule constant. Rates and amounts defaults are documented
/// assumptions, except the one-off amounts, caps and age band.
struct PolicyParameters {
    double pit_rate{0.10};
    double ssc_rate{0.28};

    Mkd gma_base_amount{4000};
    GmaScale gma_scale;
    GmaRegime gma_regime{GmaRegime::pre_covid};

    Mkd energy_supplement_amount{1000};
    int energy_supplement_months_pre{6};
    int energy_supplement_months_relaxed{12};

    Mkd child_allowance_amount{1300};
    Mkd education_allowance_amount{800};
    /// Pays the child allowance to every child, not only in GMA households.
    bool universal_child_allowance{false};

    OneOffMay oneoff_may;
    OneOffDec oneoff_dec;
    TbiParams tbi;

    int energy_supplement_months() const noexcept {
        return gma_regime == GmaRegime::relaxed ? energy_supplement_months_relaxed
                                                : energy_supplement_months_pre;
    }

    /// Throws ValidationError when an invariant fails.
    void validate() const;
};

/// Reads parameters from JSON; missing keys keep defaults, unknown keys are
/// rejected.
PolicyParameters policy_from_json(const nlohmann::json &j);
nlohmann::json to_json(const PolicyParameters &p);

} // namespace microsim
