#include "support.hpp"

#include "microsim/error.hpp"
#include "microsim/population_io.hpp"
#include "microsim/synthetic.hpp"

#include <doctest.h>

#include <cmath>

using namespace microsim;

TEST_CASE("generation is deterministic per seed") {
    SynthConfig c;
    c.households = 300;
    const auto a = generate_synthetic(c, 42);
    CHECK(a == generate_synthetic(c, 42));
    CHECK(persons_to_csv(a) == persons_to_csv(generate_synthetic(c, 42)));
    CHECK_FALSE(a == generate_synthetic(c, 43));
    CHECK(a.provenance().synthetic);
    CHECK(a.provenance().seed == 42);
    CHECK(a.household_count() == 300);
}

TEST_CASE("achieved shares stay within the declared tolerance") {
    const SynthConfig c;
    const auto pop = generate_synthetic(c, 20200501);
    const auto s = summarize(pop);
    CHECK(std::abs(s.child_share - c.child_share) <= c.share_tolerance);
    for (const auto &[status, share] : c.adult_status_shares) {
        CAPTURE(to_string(status));
        CHECK(std::abs(s.adult_status_shares.at(status) - share) <= c.share_tolerance);
    }
}

TEST_CASE("generated persons respect the labor invariants") {
    SynthConfig c;
    c.households = 2000;
    const auto pop = generate_synthetic(c, 9);
    const double lo = c.weight_min * 100.0;
    const double hi = c.weight_max * 100.0;
    for (const auto &h : pop.households()) {
        CHECK(static_cast<double>(h.survey_weight.hundredths()) >= lo);
        CHECK(static_cast<double>(h.survey_weight.hundredths()) <= hi);
        CHECK(h.member_ids.size() <= c.household_size_probs.size());
    }
    for (const auto &p : pop.persons()) {
        CHECK(person_violation(p).empty());
        if (p.labor_status == LaborStatus::employee) {
            CHECK(p.has_income(IncomeSource::wage));
        }
    }
}

TEST_CASE("infeasible configurations are rejected") {
    SynthConfig c;
    c.household_size_probs = {0.5, 0.4};
    CHECK_THROWS_AS(c.validate(), ValidationError);
    c = SynthConfig{};
    c.adult_status_shares[LaborStatus::employee] += 0.1;
    CHECK_THROWS_AS(c.validate(), ValidationError);
    c = SynthConfig{};
    c.adult_status_shares[LaborStatus::child] = 0.0;
    CHECK_THROWS_AS(c.validate(), ValidationError);
    c = SynthConfig{};
    c.household_size_probs = {1.0};
    CHECK_THROWS_AS(c.validate(), ValidationError); // children need larger households
    c = SynthConfig{};
    c.child_share = 0.95;
    CHECK_THROWS_AS(c.validate(), ValidationError);
    c = SynthConfig{};
    c.nace2_weights = {1.0, 2.0};
    CHECK_THROWS_AS(c.validate(), ValidationError);
    c = SynthConfig{};
    c.wage.sigma = -1.0;
    CHECK_THROWS_AS(c.validate(), ValidationError);
    c = SynthConfig{};
    c.weight_min = 0.0;
    CHECK_THROWS_AS(c.validate(), ValidationError);
}

TEST_CASE("config JSON round-trips and rejects unknown keys") {
    SynthConfig c;
    c.households = 123;
    c.child_share = 0.2;
    const auto back = synth_config_from_json(to_json(c));
    CHECK(back.households == 123);
    CHECK(back.child_share == 0.2);
    CHECK(to_json(back) == to_json(c));
    CHECK_THROWS_AS(synth_config_from_json(nlohmann::json{{"housholds", 5}}), ValidationError);
    CHECK_THROWS_AS(synth_config_from_json(nlohmann::json{{"households", "many"}}), ValidationError);
}
