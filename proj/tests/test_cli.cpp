#include "support.hpp"

#include "microsim/cli.hpp"
#include "microsim/csv.hpp"

#include <doctest.h>

#include <nlohmann/json.hpp>

#include <filesystem>
#include <map>
#include <sstream>

using namespace microsim;
using microsim::test::source_path;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run cli(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

// Scratch directory removed on scope exit.
struct TempDir {
    fs::path path;
    explicit TempDir(const std::string &name)
        : path(fs::temp_directory_path() / ("microsim_cli_" + name)) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string sub(const std::string &s) const { return (path / s).string(); }
};

/// Small uncalibrated run so the suite stays fast.
std::string small_config(const TempDir &dir, nlohmann::json overrides = nlohmann::json::object()) {
    nlohmann::json j = {
        {"seed", 11},
        {"synthetic", {{"households", 400}}},
        {"calibration", {{"enabled", false}}},
        {"lfs", {{"file", source_path("data/lfs_aggregates.csv").string()}}},
    };
    j.merge_patch(overrides);
    const auto file = dir.path / "config.json";
    csv::write_text_file(file, j.dump(2));
    return file.string();
}

std::map<std::string, std::string> read_dir(const std::string &dir) {
    std::map<std::string, std::string> files;
    for (const auto &e : fs::directory_iterator(dir)) {
        files[e.path().filename().string()] = csv::read_text_file(e.path());
    }
    return files;
}

} // namespace

TEST_CASE("help and usage errors") {
    CHECK(cli({"--help"}).code == kExitOk);
    CHECK(cli({}).code == kExitValidation);
    CHECK(cli({"frobnicate"}).code == kExitValidation);
    CHECK(cli({"simulate"}).code == kExitValidation);
    CHECK(cli({"simulate", "--config", "/nonexistent/config.json"}).code == kExitValidation);
}

TEST_CASE("flag values are checked") {
    const TempDir dir("flags");
    const auto cfg = small_config(dir);
    const auto out = dir.sub("out");
    CHECK(cli({"simulate", "--config", cfg, "--out", out, "--format", "xml"}).code == kExitValidation);
    CHECK(cli({"simulate", "--config", cfg, "--out", out, "--regime", "lax"}).code == kExitValidation);
    CHECK(cli({"simulate", "--config", cfg, "--out", out, "--scale", "-1"}).code == kExitValidation);
    CHECK(cli({"simulate", "--config", cfg, "--out", out, "--factors", "tax_cut"}).code ==
          kExitValidation);
    CHECK(cli({"simulate", "--config", cfg, "--out", out, "--seed", "x"}).code == kExitValidation);
}

TEST_CASE("invalid config content exits 1") {
    const TempDir dir("badcfg");
    const auto cfg = small_config(dir, {{"scenario", {{"unknown_key", 1}}}});
    const auto r = cli({"simulate", "--config", cfg, "--out", dir.sub("out")});
    CHECK(r.code == kExitValidation);
    CHECK(r.err.find("unknown_key") != std::string::npos);
}

TEST_CASE("unreachable calibration is a runtime error") {
    const TempDir dir("runtime");
    const auto cfg = small_config(
        dir, {{"calibration", {{"enabled", true}, {"target_child_poverty", 0.97}}}});
    const auto r = cli({"generate", "--config", cfg, "--out", dir.sub("out")});
    CHECK(r.code == kExitRuntime);
    CHECK(r.err.find("calibration") != std::string::npos);
}

TEST_CASE("generate then simulate from the written population") {
    const TempDir dir("generate");
    const auto cfg = small_config(dir);
    REQUIRE(cli({"generate", "--config", cfg, "--out", dir.sub("pop")}).code == kExitOk);
    CHECK(fs::exists(dir.sub("pop/persons.csv")));
    CHECK(fs::exists(dir.sub("pop/households.csv")));
    const auto manifest = nlohmann::json::parse(csv::read_text_file(dir.sub("pop/manifest.json")));
    CHECK(manifest["households"] == 400);

    const auto loaded = small_config(dir, {{"population",
                                            {{"persons", dir.sub("pop/persons.csv")},
                                             {"households", dir.sub("pop/households.csv")}}}});
    const auto a = cli({"simulate", "--config", loaded, "--out", dir.sub("a"), "--format", "csv"});
    REQUIRE(a.code == kExitOk);
    const auto b = cli({"simulate", "--config", cfg, "--out", dir.sub("b"), "--format", "csv"});
    REQUIRE(b.code == kExitOk);
    CHECK(csv::read_text_file(dir.sub("a/table2.csv")) == csv::read_text_file(dir.sub("b/table2.csv")));
}

TEST_CASE("simulate writes reports in the requested formats") {
    const TempDir dir("formats");
    const auto cfg = small_config(dir);
    REQUIRE(cli({"simulate", "--config", cfg, "--out", dir.sub("csv"), "--format", "csv"}).code == kExitOk);
    REQUIRE(cli({"simulate", "--config", cfg, "--out", dir.sub("json"), "--format", "json"}).code == kExitOk);
    for (const auto *stem : {"table2", "band", "groups", "tbi"}) {
        CAPTURE(stem);
        CHECK(fs::exists(dir.sub(std::string("csv/") + stem + ".csv")));
        CHECK_FALSE(fs::exists(dir.sub(std::string("csv/") + stem + ".json")));
        CHECK(fs::exists(dir.sub(std::string("json/") + stem + ".json")));
        CHECK_FALSE(fs::exists(dir.sub(std::string("json/") + stem + ".csv")));
    }
    CHECK(fs::exists(dir.sub("csv/band.svg")));
    const auto manifest = nlohmann::json::parse(csv::read_text_file(dir.sub("csv/manifest.json")));
    CHECK(manifest["command"] == "simulate");
    CHECK(manifest["seed"] == 11);
    CHECK(manifest["config_hash"].get<std::string>().size() == 16);
    CHECK(manifest["outputs"].size() >= 5);
}

TEST_CASE("--factors leaves the disabled columns empty") {
    const TempDir dir("factors");
    const auto cfg = small_config(dir);
    REQUIRE(cli({"simulate", "--config", cfg, "--out", dir.sub("o"), "--factors", "one_offs",
                 "--format", "csv"})
                .code == kExitOk);
    const auto t = csv::Table::read(dir.sub("o/table2.csv"));
    for (std::size_t i = 0; i < t.rows(); ++i) {
        const auto column = t.integer(i, t.column("column"));
        const bool populated = t.cell(i, t.column("populated")) == "1";
        CAPTURE(column);
        CHECK(populated == (column == 1 || column == 5));
    }
}

TEST_CASE("--scale matches the band entry at that scale") {
    const TempDir dir("scale");
    const auto cfg = small_config(dir);
    REQUIRE(cli({"simulate", "--config", cfg, "--out", dir.sub("full"), "--format", "csv"}).code == kExitOk);
    const auto band = csv::Table::read(dir.sub("full/band.csv"));
    REQUIRE(band.rows() == 3);
    REQUIRE(cli({"simulate", "--config", cfg, "--out", dir.sub("one"), "--scale", "1.2", "--format",
                 "csv"})
                .code == kExitOk);
    const auto one = csv::Table::read(dir.sub("one/scenario.csv"));
    CHECK(one.cell(0, one.column("indicator")) == "relative");
    CHECK(one.cell(0, one.column("shock_scale")) == "1.20");
    CHECK(one.cell(0, one.column("child_rate")) ==
          band.cell(2, band.column("relative_child_rate")));
}

TEST_CASE("shocks writes the full cell table") {
    const TempDir dir("shocks");
    const auto cfg = small_config(dir);
    const auto r = cli({"shocks", "--config", cfg, "--out", dir.sub("o")});
    REQUIRE(r.code == kExitOk);
    const auto t = csv::Table::read(dir.sub("o/cells.csv"));
    CHECK(t.rows() == 534 + 21);
    const auto s = nlohmann::json::parse(csv::read_text_file(dir.sub("o/shocks.json")));
    CHECK(s["wage_cells"] == 534);
    CHECK(s["selfemp_cells"] == 21);
}

TEST_CASE("validate passes or fails on the declared tolerances") {
    const TempDir dir("validate");
    const auto pass_cfg =
        small_config(dir, {{"validation", {{"observed", {{"wage", -0.02}, {"self_employment", -0.15}}},
                                           {"tolerance_pp", {{"wage", 100.0}, {"self_employment", 100.0}}}}}});
    CHECK(cli({"validate", "--config", pass_cfg, "--out", dir.sub("p")}).code == kExitOk);
    CHECK(fs::exists(dir.sub("p/validation.csv")));
    const auto fail_cfg =
        small_config(dir, {{"validation", {{"observed", {{"wage", 0.9}, {"self_employment", 0.9}}},
                                           {"tolerance_pp", {{"wage", 1.0}, {"self_employment", 1.0}}}}}});
    const auto r = cli({"validate", "--config", fail_cfg, "--out", dir.sub("f")});
    CHECK(r.code == kExitValidation);
    CHECK(r.out.find("FAIL") != std::string::npos);
}

TEST_CASE("plot renders saved reports and warns on empty groups") {
    const TempDir dir("plot");
    csv::write_text_file(dir.path / "band.csv",
                         "shock_scale,relative_child_rate,baseline_rate,delta_pp,headcount\n"
                         "0.80,0.319000,0.278000,4.1000,16722\n"
                         "1.00,0.326000,0.278000,4.8000,19577\n"
                         "1.20,0.332000,0.278000,5.4000,22025\n");
    csv::write_text_file(dir.path / "groups.csv",
                         "dimension,group,indicator,pre_rate,post_rate\n"
                         "sex,female,relative,0.25,0.3\n"
                         "three_plus_children,yes,relative,,\n");
    const auto r = cli({"plot", "--reports", dir.path.string(), "--out", dir.sub("svg")});
    REQUIRE(r.code == kExitOk);
    CHECK(fs::exists(dir.sub("svg/band.svg")));
    CHECK(fs::exists(dir.sub("svg/groups_sex.svg")));
    CHECK_FALSE(fs::exists(dir.sub("svg/groups_three_plus_children.svg")));
    CHECK(r.err.find("warning") != std::string::npos);

    CHECK(cli({"plot", "--reports", dir.sub("nothing"), "--out", dir.sub("x")}).code == kExitValidation);
    fs::create_directories(dir.path / "bad");
    csv::write_text_file(dir.path / "bad" / "band.csv", "shock_scale\n1\n");
    CHECK(cli({"plot", "--reports", dir.sub("bad"), "--out", dir.sub("x")}).code == kExitValidation);
}

TEST_CASE("outputs are byte-identical across thread counts") {
    const TempDir dir("threads");
    const auto cfg = small_config(dir);
    REQUIRE(cli({"simulate", "--config", cfg, "--out", dir.sub("t1"), "--threads", "1"}).code == kExitOk);
    REQUIRE(cli({"simulate", "--config", cfg, "--out", dir.sub("t4"), "--threads", "4"}).code == kExitOk);
    REQUIRE(cli({"simulate", "--config", cfg, "--out", dir.sub("again"), "--threads", "1"}).code == kExitOk);
    const auto a = read_dir(dir.sub("t1"));
    CHECK(a.size() >= 10);
    CHECK(a == read_dir(dir.sub("t4")));
    CHECK(a == read_dir(dir.sub("again")));
}
