#include "support.hpp"

#include "microsim/config.hpp"
#include "microsim/error.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>

using namespace microsim;
using microsim::test::source_path;

namespace {

nlohmann::json default_json() {
    std::ifstream in(source_path("configs/default.json"));
    return nlohmann::json::parse(in);
}

RunConfig parse(const nlohmann::json &j) {
    return config_from_json(j, source_path("configs"));
}

} // namespace

TEST_CASE("shipped config loads with declared values") {
    const auto c = load_config(source_path("configs/default.json"));
    CHECK(c.seed == 20200501);
    CHECK(c.synthetic.households == 10000);
    CHECK(c.calibration.target_child_poverty == 0.278);
    CHECK(c.scenario.shock_start_month == 3);
    CHECK(c.scenario.factors == FactorSwitches::all_four());
    CHECK(c.band_scales == std::vector<double>{0.8, 1.0, 1.2});
    CHECK(c.dimensions.size() == 4);
    CHECK(c.engine.child_population == 407865);
    CHECK(c.engine.absolute_extreme_low == 36000);
    CHECK(c.tolerance_pp.wage == 5.0);
    CHECK(std::filesystem::exists(c.lfs.file));
    CHECK(c.params.gma_regime == GmaRegime::pre_covid);
}

TEST_CASE("unknown keys are rejected at every level") {
    auto j = default_json();
    j["sede"] = 1;
    CHECK_THROWS_AS(parse(j), ValidationError);
    j = default_json();
    j["scenario"]["shock_scael"] = 1.0;
    CHECK_THROWS_AS(parse(j), ValidationError);
    j = default_json();
    j["poverty"]["equivalence_scale"]["teen"] = 0.4;
    CHECK_THROWS_AS(parse(j), ValidationError);
    j = default_json();
    j["params"]["gma_bonus"] = 1;
    CHECK_THROWS_AS(parse(j), ValidationError);
}

TEST_CASE("bad values are rejected") {
    const auto bad = [](auto edit) {
        auto j = default_json();
        edit(j);
        CHECK_THROWS_AS(parse(j), ValidationError);
    };
    bad([](auto &j) { j["lfs"]["file"] = "missing.csv"; });
    bad([](auto &j) { j.erase("lfs"); });
    bad([](auto &j) { j["calibration"]["target_child_poverty"] = 1.5; });
    bad([](auto &j) { j["calibration"]["max_iterations"] = 0; });
    bad([](auto &j) { j["scenario"]["band_scales"] = nlohmann::json::array(); });
    bad([](auto &j) { j["scenario"]["band_scales"] = {0.8, -1.0}; });
    bad([](auto &j) { j["scenario"]["factors"] = {"wage_shock", "tax_cut"}; });
    bad([](auto &j) { j["scenario"]["factors"] = "wage_shock"; });
    bad([](auto &j) { j["scenario"]["dimensions"] = {"region"}; });
    bad([](auto &j) { j["scenario"]["shock_start_month"] = 13; });
    bad([](auto &j) { j["poverty"]["absolute_extreme_low"] = 80000; });
    bad([](auto &j) { j["poverty"]["child_population"] = 0; });
    bad([](auto &j) { j["poverty"]["equivalence_scale"]["child_age_limit"] = 30; });
    bad([](auto &j) { j["validation"]["tolerance_pp"]["wage"] = -1.0; });
    bad([](auto &j) { j["seed"] = "abc"; });
    bad([](auto &j) { j["params"]["gma_regime"] = "generous"; });
    bad([](auto &j) { j["population"] = {{"persons", "tests/fixtures/micro/persons.csv"}}; });
}

TEST_CASE("invalid JSON text is a validation error") {
    const auto dir = std::filesystem::temp_directory_path() / "microsim_config_test";
    std::filesystem::create_directories(dir);
    const auto file = dir / "broken.json";
    std::ofstream(file) << "{\"seed\": 1,";
    CHECK_THROWS_AS(load_config(file), ValidationError);
    CHECK_THROWS_AS(load_config(dir / "absent.json"), ValidationError);
    std::filesystem::remove_all(dir);
}

TEST_CASE("effective config ignores threads and round-trips") {
    auto j = default_json();
    j["threads"] = 1;
    const auto a = effective_config(parse(j));
    j["threads"] = 7;
    const auto b = effective_config(parse(j));
    CHECK(a == b);
    CHECK_FALSE(a.contains("threads"));
    CHECK(a["lfs"]["file"] == "lfs_aggregates.csv");

    // Paths are echoed relative to the input directory.
    const auto again = effective_config(
        config_from_json(nlohmann::json::parse(a.dump()), source_path("data")));
    CHECK(again == a);

    j["seed"] = 1;
    CHECK(effective_config(parse(j)) != a);
}

TEST_CASE("fnv1a reference values") {
    CHECK(fnv1a_hex("") == "cbf29ce484222325");
    CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
    CHECK(fnv1a_hex("foobar") == "85944171f73967e8");
}
