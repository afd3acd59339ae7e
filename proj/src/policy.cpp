#include "microsim/policy.hpp"

#include "json_util.hpp"
#include "microsim/error.hpp"

namespace microsim {

std::string_view to_string(GmaRegime r) { return r == GmaRegime::relaxed ? "relaxed" : "pre_covid"; }

GmaRegime parse_gma_regime(std::string_view s) {
    if (s == "pre_covid" || s == "pre") {
        return GmaRegime::pre_covid;
    }
    if (s == "relaxed") {
        return GmaRegime::relaxed;
    }
    throw ValidationError("unknown gma_regime '" + std::string(s) + "'");
}

void PolicyParameters::validate() const {
    const auto rate = [](double r, const char *name) {
        if (!(r >= 0.0 && r < 1.0)) {
            throw ValidationError(std::string(name) + " must be in [0, 1)");
        }
    };
    const auto amount = [](Mkd v, const char *name) {
        if (v < 0) {
            throw ValidationError(std::string(name) + " must be >= 0");
        }
    };
    const auto cap = [](Mkd v, const char *name) {
        if (v <= 0) {
            throw ValidationError(std::string(name) + " must be > 0");
        }
    };
    const auto months = [](int m, const char *name) {
        if (m < 0 || m > 12) {
            throw ValidationError(std::string(name) + " must be in 0..12");
        }
    };
    rate(pit_rate, "pit_rate");
    rate(ssc_rate, "ssc_rate");
    amount(gma_base_amount, "gma_base_amount");
    if (!(gma_scale.first_adult > 0 && gma_scale.additional_adult >= 0 && gma_scale.child >= 0)) {
        throw ValidationError("gma_scale coefficients must be non-negative, first_adult > 0");
    }
    amount(energy_supplement_amount, "energy_supplement_amount");
    months(energy_supplement_months_pre, "energy_supplement_months.pre_covid");
    months(energy_supplement_months_relaxed, "energy_supplement_months.relaxed");
    amount(child_allowance_amount, "child_allowance_amount");
    amount(education_allowance_amount, "education_allowance_amount");
    amount(oneoff_may.adult_sa_amount, "oneoff_may.adult_sa_amount");
    amount(oneoff_may.low_wage_amount, "oneoff_may.low_wage_amount");
    amount(oneoff_may.student_amount, "oneoff_may.student_amount");
    cap(oneoff_may.low_wage_cap, "oneoff_may.low_wage_cap");
    if (oneoff_may.student_age_min > oneoff_may.student_age_max || oneoff_may.student_age_min < 0) {
        throw ValidationError("oneoff_may.student_age must be an ordered non-negative range");
    }
    cap(oneoff_dec.passive_jobseeker_cap, "oneoff_dec.passive_jobseeker_cap");
    cap(oneoff_dec.pension_cap, "oneoff_dec.pension_cap");
    amount(oneoff_dec.amount, "oneoff_dec.amount");
    if (!(tbi.transfer_fraction >= 0.0)) {
        throw ValidationError("tbi.transfer_fraction must be >= 0");
    }
    if (!(tbi.vulnerability_multiplier > 1.0)) {
        throw ValidationError("tbi.vulnerability_multiplier must be > 1");
    }
}

PolicyParameters policy_from_json(const nlohmann::json &j) {
    PolicyParameters p;
    detail::StrictObject o(j, "params");
    o.read("pit_rate", p.pit_rate);
    o.read("ssc_rate", p.ssc_rate);
    o.read("gma_base_amount", p.gma_base_amount);
    if (const auto *s = o.child("gma_scale_coefficients")) {
        detail::StrictObject so(*s, o.path("gma_scale_coefficients"));
        so.read("first_adult", p.gma_scale.first_adult);
        so.read("additional_adult", p.gma_scale.additional_adult);
        so.read("child", p.gma_scale.child);
        so.finish();
    }
    if (const auto *r = o.child("gma_regime")) {
        if (!r->is_string()) {
            throw ValidationError("params.gma_regime: expected string");
        }
        p.gma_regime = parse_gma_regime(r->get<std::string>());
    }
    o.read("energy_supplement_amount", p.energy_supplement_amount);
    if (const auto *m = o.child("energy_supplement_months")) {
        detail::StrictObject mo(*m, o.path("energy_supplement_months"));
        mo.read("pre_covid", p.energy_supplement_months_pre);
        mo.read("relaxed", p.energy_supplement_months_relaxed);
        mo.finish();
    }
    o.read("child_allowance_amount", p.child_allowance_amount);
    o.read("education_allowance_amount", p.education_allowance_amount);
    o.read("universal_child_allowance", p.universal_child_allowance);
    if (const auto *m = o.child("oneoff_may")) {
        detail::StrictObject mo(*m, o.path("oneoff_may"));
        mo.read("adult_sa_amount", p.oneoff_may.adult_sa_amount);
        mo.read("low_wage_amount", p.oneoff_may.low_wage_amount);
        mo.read("low_wage_cap", p.oneoff_may.low_wage_cap);
        mo.read("student_amount", p.oneoff_may.student_amount);
        if (const auto *a = mo.child("student_age")) {
            if (!a->is_array() || a->size() != 2) {
                throw ValidationError("params.oneoff_may.student_age: expected [min, max]");
            }
            p.oneoff_may.student_age_min = a->at(0).get<int>();
            p.oneoff_may.student_age_max = a->at(1).get<int>();
        }
        mo.finish();
    }
    if (const auto *d = o.child("oneoff_dec")) {
        detail::StrictObject dob(*d, o.path("oneoff_dec"));
        dob.read("passive_jobseeker_cap", p.oneoff_dec.passive_jobseeker_cap);
        dob.read("pension_cap", p.oneoff_dec.pension_cap);
        dob.read("amount", p.oneoff_dec.amount);
        dob.finish();
    }
    if (const auto *t = o.child("tbi")) {
        detail::StrictObject to(*t, o.path("tbi"));
        to.read("transfer_fraction", p.tbi.transfer_fraction);
        to.read("vulnerability_multiplier", p.tbi.vulnerability_multiplier);
        to.finish();
    }
    o.finish();
    p.validate();
    return p;
}

nlohmann::json to_json(const PolicyParameters &p) {
    nlohmann::ordered_json j;
    j["pit_rate"] = p.pit_rate;
    j["ssc_rate"] = p.ssc_rate;
    j["gma_base_amount"] = p.gma_base_amount;
    j["gma_scale_coefficients"] = {{"first_adult", p.gma_scale.first_adult},
                                   {"additional_adult", p.gma_scale.additional_adult},
                                   {"child", p.gma_scale.child}};
    j["gma_regime"] = std::string(to_string(p.gma_regime));
    j["energy_supplement_amount"] = p.energy_supplement_amount;
    j["energy_supplement_months"] = {{"pre_covid", p.energy_supplement_months_pre},
                                     {"relaxed", p.energy_supplement_months_relaxed}};
    j["child_allowance_amount"] = p.child_allowance_amount;
    j["education_allowance_amount"] = p.education_allowance_amount;
    j["universal_child_allowance"] = p.universal_child_allowance;
    j["oneoff_may"] = {{"adult_sa_amount", p.oneoff_may.adult_sa_amount},
                       {"low_wage_amount", p.oneoff_may.low_wage_amount},
                       {"low_wage_cap", p.oneoff_may.low_wage_cap},
                       {"student_amount", p.oneoff_may.student_amount},
                       {"student_age", {p.oneoff_may.student_age_min, p.oneoff_may.student_age_max}}};
    j["oneoff_dec"] = {{"passive_jobseeker_cap", p.oneoff_dec.passive_jobseeker_cap},
                       {"pension_cap", p.oneoff_dec.pension_cap},
                       {"amount", p.oneoff_dec.amount}};
    j["tbi"] = {{"transfer_fraction", p.tbi.transfer_fraction},
                {"vulnerability_multiplier", p.tbi.vulnerability_multiplier}};
    return nlohmann::json::parse(j.dump());
}

} // namespace microsim
