#include "microsim/config.hpp"

#include "json_util.hpp"
#include "microsim/csv.hpp"
#include "microsim/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace microsim {

namespace {

using detail::StrictObject;
namespace fs = std::filesystem;

fs::path resolve(const fs::path &base, const std::string &p) {
    const fs::path path(p);
    return path.is_absolute() ? path : base / path;
}

fs::path existing_file(const fs::path &base, StrictObject &o, const std::string &key) {
    std::string raw;
    o.read(key, raw);
    if (raw.empty()) {
        throw ValidationError(o.path(key) + ": expected a file path");
    }
    auto p = resolve(base, raw);
    if (!fs::is_regular_file(p)) {
        throw ValidationError(o.path(key) + ": file not found: " + p.string());
    }
    return p;
}

SourceChanges read_changes(StrictObject &parent, const std::string &key, SourceChanges c) {
    if (const auto *j = parent.child(key)) {
        StrictObject o(*j, parent.path(key));
        o.read("wage", c.wage);
        o.read("self_employment", c.self_employment);
        o.finish();
    }
    return c;
}

} // namespace

void RunConfig::validate() const {
    scenario.validate();
    params.validate();
    if (persons_file.has_value() != households_file.has_value()) {
        throw ValidationError("population: persons and households must be given together");
    }
    if (!(calibration.target_child_poverty > 0.0 && calibration.target_child_poverty < 1.0)) {
        throw ValidationError("calibration.target_child_poverty must be in (0, 1)");
    }
    if (calibration.max_iterations < 1 || !(calibration.tolerance > 0.0)) {
        throw ValidationError("calibration: max_iterations >= 1 and tolerance > 0 required");
    }
    if (lfs.small_cell_threshold < 0) {
        throw ValidationError("lfs.small_cell_threshold must be >= 0");
    }
    if (band_scales.empty()) {
        throw ValidationError("scenario.band_scales must not be empty");
    }
    for (double s : band_scales) {
        if (!(s > 0.0) || !std::isfinite(s)) {
            throw ValidationError("scenario.band_scales entries must be > 0");
        }
    }
    if (!(engine.absolute_extreme_low > 0 &&
          engine.absolute_extreme_low < engine.absolute_upper_middle)) {
        throw ValidationError("poverty: need 0 < absolute_extreme_low < absolute_upper_middle");
    }
    if (engine.child_population <= 0) {
        throw ValidationError("poverty.child_population must be > 0");
    }
    if (!(tolerance_pp.wage >= 0.0 && tolerance_pp.self_employment >= 0.0)) {
        throw ValidationError("validation.tolerance_pp must be >= 0");
    }
}

RunConfig config_from_json(const nlohmann::json &j, const fs::path &base_dir) {
    RunConfig c;
    StrictObject o(j, "");
    o.read("seed", c.seed);
    o.read("threads", c.threads);
    if (const auto *p = o.child("population")) {
        StrictObject po(*p, "population");
        c.persons_file = existing_file(base_dir, po, "persons");
        c.households_file = existing_file(base_dir, po, "households");
        po.finish();
    }
    if (const auto *s = o.child("synthetic")) {
        c.synthetic = synth_config_from_json(*s);
    }
    if (const auto *s = o.child("calibration")) {
        StrictObject co(*s, "calibration");
        co.read("enabled", c.calibration.enabled);
        co.read("target_child_poverty", c.calibration.target_child_poverty);
        co.read("max_iterations", c.calibration.max_iterations);
        co.read("tolerance", c.calibration.tolerance);
        co.finish();
    }
    if (const auto *s = o.child("lfs")) {
        StrictObject lo(*s, "lfs");
        c.lfs.file = existing_file(base_dir, lo, "file");
        lo.read("base_period", c.lfs.base_period);
        lo.read("shocked_period", c.lfs.shocked_period);
        lo.read("small_cell_threshold", c.lfs.small_cell_threshold);
        lo.finish();
    } else {
        throw ValidationError("lfs: section is required");
    }
    if (const auto *s = o.child("scenario")) {
        StrictObject so(*s, "scenario");
        so.read("shock_start_month", c.scenario.shock_start_month);
        so.read("shock_scale", c.scenario.shock_scale);
        if (const auto *f = so.child("factors")) {
            if (!f->is_array()) {
                throw ValidationError("scenario.factors: expected an array of names");
            }
            std::string list;
            for (const auto &name : *f) {
                if (!name.is_string()) {
                    throw ValidationError("scenario.factors: expected an array of names");
                }
                list += (list.empty() ? "" : ",") + name.get<std::string>();
            }
            c.scenario.factors = FactorSwitches::parse(list.empty() ? "none" : list);
        }
        so.read("columns_on_shocked_income", c.columns_on_shocked_income);
        so.read("band_scales", c.band_scales);
        if (const auto *d = so.child("dimensions")) {
            if (!d->is_array()) {
                throw ValidationError("scenario.dimensions: expected an array of names");
            }
            c.dimensions.clear();
            for (const auto &name : *d) {
                if (!name.is_string()) {
                    throw ValidationError("scenario.dimensions: expected an array of names");
                }
                c.dimensions.push_back(parse_group_dimension(name.get<std::string>()));
            }
        }
        so.finish();
    }
    if (const auto *s = o.child("poverty")) {
        StrictObject po(*s, "poverty");
        if (const auto *e = po.child("equivalence_scale")) {
            StrictObject eo(*e, "poverty.equivalence_scale");
            double adult = 0.5;
            double child = 0.3;
            int limit = c.engine.scale.child_age_limit;
            eo.read("additional_adult", adult);
            eo.read("child", child);
            eo.read("child_age_limit", limit);
            eo.finish();
            c.engine.scale = EquivalenceScale::from_decimals(adult, child);
            if (limit < 1 || limit > kAdultAge) {
                throw ValidationError("poverty.equivalence_scale.child_age_limit must be in 1..18");
            }
            c.engine.scale.child_age_limit = limit;
        }
        po.read("absolute_extreme_low", c.engine.absolute_extreme_low);
        po.read("absolute_upper_middle", c.engine.absolute_upper_middle);
        po.read("child_population", c.engine.child_population);
        po.finish();
    }
    if (const auto *s = o.child("validation")) {
        StrictObject vo(*s, "validation");
        c.tolerance_pp = read_changes(vo, "tolerance_pp", c.tolerance_pp);
        if (vo.has("observed")) {
            c.observed = read_changes(vo, "observed", {});
        }
        vo.finish();
    }
    if (const auto *s = o.child("params")) {
        c.params = policy_from_json(*s);
    }
    o.finish();
    c.engine.columns_on_shocked_income = c.columns_on_shocked_income;
    c.engine.threads = c.threads;
    c.validate();
    return c;
}

RunConfig load_config(const fs::path &file) {
    const auto text = csv::read_text_file(file);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw ValidationError(file.string() + ": invalid JSON: " + e.what());
    }
    return config_from_json(j, file.parent_path());
}

nlohmann::ordered_json effective_config(const RunConfig &c) {
    nlohmann::ordered_json j;
    j["seed"] = c.seed;
    if (c.persons_file) {
        j["population"] = {{"persons", c.persons_file->filename().generic_string()},
                           {"households", c.households_file->filename().generic_string()}};
    }
    j["synthetic"] = nlohmann::ordered_json::parse(to_json(c.synthetic).dump());
    j["calibration"] = {{"enabled", c.calibration.enabled},
                        {"target_child_poverty", c.calibration.target_child_poverty},
                        {"max_iterations", c.calibration.max_iterations},
                        {"tolerance", c.calibration.tolerance}};
    j["lfs"] = {{"file", c.lfs.file.filename().generic_string()},
                {"base_period", c.lfs.base_period},
                {"shocked_period", c.lfs.shocked_period},
                {"small_cell_threshold", c.lfs.small_cell_threshold}};
    nlohmann::ordered_json dims = nlohmann::ordered_json::array();
    for (auto d : c.dimensions) {
        dims.push_back(to_string(d));
    }
    nlohmann::ordered_json factors = nlohmann::ordered_json::array();
    if (const auto names = c.scenario.factors.to_string(); names != "none") {
        for (std::size_t at = 0; at <= names.size();) {
            const auto end = std::min(names.find(',', at), names.size());
            factors.push_back(names.substr(at, end - at));
            at = end + 1;
        }
    }
    j["scenario"] = {{"shock_start_month", c.scenario.shock_start_month},
                     {"shock_scale", c.scenario.shock_scale},
                     {"factors", factors},
                     {"columns_on_shocked_income", c.columns_on_shocked_income},
                     {"band_scales", c.band_scales},
                     {"dimensions", dims}};
    j["poverty"] = {{"equivalence_scale",
                     {{"additional_adult", static_cast<double>(c.engine.scale.additional_adult_h) / 100.0},
                      {"child", static_cast<double>(c.engine.scale.child_h) / 100.0},
                      {"child_age_limit", c.engine.scale.child_age_limit}}},
                    {"absolute_extreme_low", c.engine.absolute_extreme_low},
                    {"absolute_upper_middle", c.engine.absolute_upper_middle},
                    {"child_population", c.engine.child_population}};
    nlohmann::ordered_json validation;
    validation["tolerance_pp"] = {{"wage", c.tolerance_pp.wage},
                                  {"self_employment", c.tolerance_pp.self_employment}};
    if (c.observed) {
        validation["observed"] = {{"wage", c.observed->wage},
                                  {"self_employment", c.observed->self_employment}};
    }
    j["validation"] = validation;
    j["params"] = nlohmann::ordered_json::parse(to_json(c.params).dump());
    return j;
}

std::string fnv1a_hex(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : data) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace microsim
