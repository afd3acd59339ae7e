#include "microsim/cli.hpp"

#include "microsim/calibration.hpp"
#include "microsim/config.hpp"
#include "microsim/csv.hpp"
#include "microsim/error.hpp"
#include "microsim/population_io.hpp"
#include "microsim/report.hpp"
#include "microsim/scenario.hpp"
#include "microsim/svg.hpp"
#include "microsim/synthetic.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <ostream>

namespace microsim {

namespace {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

struct Options {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string out{"out"};
    std::optional<double> scale;
    std::optional<std::string> factors;
    std::optional<std::string> regime;
    std::string format{"both"};
    std::optional<unsigned> threads;
    std::string reports;
};

struct Context {
    const Options &opt;
    std::ostream &out;
    std::ostream &err;
    RunConfig cfg;
    fs::path out_dir;
    std::vector<std::string> written;

    bool want_csv() const { return opt.format != "json"; }
    bool want_json() const { return opt.format != "csv"; }

    void write(const std::string &name, std::string_view text) {
        csv::write_text_file(out_dir / name, text);
        written.push_back(name);
    }

    void write_pair(const std::string &stem, const std::string &csv_text, const ojson &json) {
        if (want_csv()) {
            write(stem + ".csv", csv_text);
        }
        if (want_json()) {
            write(stem + ".json", report::dump(json));
        }
    }

    void manifest(const std::string &command, ojson extra = ojson::object()) {
        const auto eff = effective_config(cfg);
        ojson m;
        m["command"] = command;
        m["seed"] = cfg.seed;
        m["config_hash"] = fnv1a_hex(eff.dump());
        for (auto &[k, v] : extra.items()) {
            m[k] = v;
        }
        m["outputs"] = written;
        m["effective_config"] = eff;
        csv::write_text_file(out_dir / "manifest.json", report::dump(m));
    }
};

RunConfig effective(const Options &opt) {
    if (opt.config.empty()) {
        throw ValidationError("--config is required");
    }
    auto cfg = load_config(opt.config);
    if (opt.seed) {
        cfg.seed = *opt.seed;
    }
    if (opt.threads) {
        cfg.threads = *opt.threads;
        cfg.engine.threads = *opt.threads;
    }
    if (opt.scale) {
        cfg.scenario.shock_scale = *opt.scale;
    }
    if (opt.factors) {
        cfg.scenario.factors = FactorSwitches::parse(*opt.factors);
    }
    if (opt.regime) {
        cfg.params.gma_regime = parse_gma_regime(*opt.regime);
    }
    cfg.validate();
    return cfg;
}

Context make_context(const Options &opt, std::ostream &out, std::ostream &err) {
    Context ctx{opt, out, err, effective(opt), fs::path(opt.out), {}};
    std::error_code ec;
    fs::create_directories(ctx.out_dir, ec);
    if (ec || !fs::is_directory(ctx.out_dir)) {
        throw ValidationError("cannot create output directory " + ctx.out_dir.string());
    }
    return ctx;
}

struct Acquired {
    Population population;
    ojson calibration = ojson::object();
};

Acquired calibrate(Context &ctx, const Population &pop) {
    Acquired a{pop, ojson::object()};
    const auto &cal = ctx.cfg.calibration;
    if (!cal.enabled) {
        return a;
    }
    CalibrationOptions o;
    o.max_iterations = cal.max_iterations;
    o.tolerance = cal.tolerance;
    o.scale = ctx.cfg.engine.scale;
    o.threads = ctx.cfg.threads;
    auto r = in_stage("calibration", [&] {
        return calibrate_to_baseline(pop, cal.target_child_poverty, ctx.cfg.params, o);
    });
    ctx.out << "calibrated: relative child poverty " << csv::fixed(r.achieved_rate * 100.0, 2)
            << "% (gamma " << csv::fixed(r.gamma, 6) << ", " << r.iterations << " evaluations)\n";
    a.population = std::move(r.population);
    a.calibration = ojson{{"target", cal.target_child_poverty},
                          {"achieved_rate", r.achieved_rate},
                          {"gamma", r.gamma},
                          {"evaluations", r.iterations}};
    return a;
}

Population generate(Context &ctx) {
    return in_stage("microdata", [&] {
        return generate_synthetic(ctx.cfg.synthetic, ctx.cfg.seed);
    });
}

// Loaded populations are used as given; generated ones are calibrated.
Acquired acquire_population(Context &ctx) {
    if (ctx.cfg.persons_file) {
        return Acquired{in_stage("microdata",
                                 [&] {
                                     return load_population(*ctx.cfg.persons_file,
                                                            *ctx.cfg.households_file);
                                 }),
                        ojson::object()};
    }
    return calibrate(ctx, generate(ctx));
}

struct ShockInputs {
    CellChangeTable cells;
    SourceChanges observed;
};

ShockInputs load_shocks(const Context &ctx) {
    return in_stage("shock_calibration", [&] {
        const auto aggregates = load_lfs_aggregates(ctx.cfg.lfs.file);
        const auto &base = find_period(aggregates, ctx.cfg.lfs.base_period);
        const auto &shocked = find_period(aggregates, ctx.cfg.lfs.shocked_period);
        ShockInputs s;
        s.cells = compute_cell_changes(base, shocked, ctx.cfg.lfs.small_cell_threshold);
        s.observed = SourceChanges{observed_income_change(base, shocked, IncomeSource::wage),
                                   observed_income_change(base, shocked, IncomeSource::self_employment)};
        return s;
    });
}

void write_population(Context &ctx, const Population &pop) {
    ctx.write("persons.csv", persons_to_csv(pop));
    ctx.write("households.csv", households_to_csv(pop));
}

int cmd_generate(const Options &opt, std::ostream &out, std::ostream &err) {
    auto ctx = make_context(opt, out, err);
    const auto pop = generate(ctx);
    const auto summary = summarize(pop);
    ojson shares;
    for (const auto &[s, v] : summary.adult_status_shares) {
        shares[std::string(to_string(s))] = v;
    }
    auto acquired = calibrate(ctx, pop);
    write_population(ctx, acquired.population);
    ctx.manifest("generate", ojson{{"households", acquired.population.household_count()},
                                   {"persons", acquired.population.persons().size()},
                                   {"child_share", summary.child_share},
                                   {"adult_status_shares", shares},
                                   {"calibration", acquired.calibration}});
    out << "wrote " << acquired.population.household_count() << " households to "
        << ctx.out_dir.generic_string() << "\n";
    return kExitOk;
}

int cmd_calibrate(const Options &opt, std::ostream &out, std::ostream &err) {
    auto ctx = make_context(opt, out, err);
    if (!ctx.cfg.persons_file) {
        throw ValidationError("calibrate needs population.persons and population.households in the config");
    }
    const auto pop = in_stage("microdata", [&] {
        return load_population(*ctx.cfg.persons_file, *ctx.cfg.households_file);
    });
    ctx.cfg.calibration.enabled = true;
    auto acquired = calibrate(ctx, pop);
    write_population(ctx, acquired.population);
    ctx.manifest("calibrate", ojson{{"calibration", acquired.calibration}});
    return kExitOk;
}

int cmd_shocks(const Options &opt, std::ostream &out, std::ostream &err) {
    auto ctx = make_context(opt, out, err);
    const auto s = load_shocks(ctx);
    std::array<int, 3> by_provenance{};
    for (const auto &c : s.cells.wage_cells()) {
        ++by_provenance[static_cast<std::size_t>(c.provenance)];
    }
    for (const auto &c : s.cells.selfemp_cells()) {
        ++by_provenance[static_cast<std::size_t>(c.provenance)];
    }
    ctx.write("cells.csv", cell_table_to_csv(s.cells));
    ojson summary;
    summary["wage_cells"] = s.cells.wage_cells().size();
    summary["selfemp_cells"] = s.cells.selfemp_cells().size();
    for (auto p : {CellProvenance::estimated, CellProvenance::suppressed_small_cell,
                   CellProvenance::missing_default}) {
        summary["cells_by_provenance"][std::string(to_string(p))] =
            by_provenance[static_cast<std::size_t>(p)];
    }
    summary["observed_change"] = {{"wage", s.observed.wage},
                                  {"self_employment", s.observed.self_employment}};
    ctx.write("shocks.json", report::dump(summary));
    ctx.manifest("shocks");
    out << "cells: " << s.cells.wage_cells().size() << " wage, " << s.cells.selfemp_cells().size()
        << " self-employment; " << by_provenance[0] << " estimated\n";
    return kExitOk;
}

void plot_reports(Context &ctx, const std::string &band_csv, const std::string &groups_csv) {
    if (!band_csv.empty()) {
        const auto band = report::parse_band_csv(band_csv, "band.csv");
        if (const auto svg = svg::band_chart(band)) {
            ctx.write("band.svg", *svg);
        } else {
            ctx.err << "warning: band report has no defined rate; chart omitted\n";
        }
    }
    if (!groups_csv.empty()) {
        for (const auto &series : report::parse_groups_csv(groups_csv, "groups.csv")) {
            if (const auto svg = svg::group_chart(series)) {
                ctx.write("groups_" + series.dimension + ".svg", *svg);
            } else {
                ctx.err << "warning: groups report for " << series.dimension
                        << " has no defined rate; chart omitted\n";
            }
        }
    }
}

int cmd_simulate(const Options &opt, std::ostream &out, std::ostream &err) {
    auto ctx = make_context(opt, out, err);
    auto acquired = acquire_population(ctx);
    auto shocks = load_shocks(ctx);
    const ScenarioEngine engine(std::move(acquired.population), std::move(shocks.cells),
                                ctx.cfg.params, ctx.cfg.engine);
    const auto &spec = ctx.cfg.scenario;
    if (opt.scale) {
        const auto r = engine.run(spec).report;
        ctx.write_pair("scenario", report::scenario_csv(r, spec.shock_scale),
                       report::scenario_json(r, spec.shock_scale));
        ctx.manifest("simulate", ojson{{"calibration", acquired.calibration}});
        out << "relative child poverty at scale " << csv::fixed(spec.shock_scale, 2) << ": "
            << report::rate_field(r.at(Indicator::relative).child) << "\n";
        return kExitOk;
    }
    const auto table2 = engine.decompose(spec);
    ctx.write_pair("table2", report::decomposition_csv(table2), report::decomposition_json(table2));
    const auto band = engine.uncertainty_band(spec, ctx.cfg.band_scales);
    const auto band_text = report::band_csv(band);
    ctx.write_pair("band", band_text, report::band_json(band));
    const auto groups = engine.disaggregate(spec, ctx.cfg.dimensions);
    const auto groups_text = report::groups_csv(groups);
    ctx.write_pair("groups", groups_text, report::groups_json(groups));
    const auto tbi = engine.tbi_whatif(spec);
    ctx.write_pair("tbi", report::tbi_csv(tbi), report::tbi_json(tbi));
    plot_reports(ctx, band_text, groups_text);
    ctx.manifest("simulate", ojson{{"calibration", acquired.calibration}});
    out << report::decomposition_text(table2, ctx.cfg.engine.child_population);
    return kExitOk;
}

int cmd_validate(const Options &opt, std::ostream &out, std::ostream &err) {
    auto ctx = make_context(opt, out, err);
    auto acquired = acquire_population(ctx);
    auto shocks = load_shocks(ctx);
    const auto observed = ctx.cfg.observed.value_or(shocks.observed);
    const ScenarioEngine engine(std::move(acquired.population), std::move(shocks.cells),
                                ctx.cfg.params, ctx.cfg.engine);
    const auto simulated = engine.simulated_changes(ctx.cfg.scenario);
    const auto v = validate_against_observed(simulated, observed, ctx.cfg.tolerance_pp);
    ctx.write_pair("validation", report::validation_csv(v), report::validation_json(v));
    ctx.manifest("validate", ojson{{"pass", v.pass()}});
    for (const auto &r : v.rows) {
        out << to_string(r.source) << ": simulated " << csv::fixed(r.simulated * 100.0, 1)
            << "%, observed " << csv::fixed(r.observed * 100.0, 1) << "%, gap "
            << csv::fixed(r.gap_pp, 1) << "pp (tolerance " << csv::fixed(r.tolerance_pp, 1)
            << "pp) " << (r.pass ? "PASS" : "FAIL") << "\n";
    }
    if (!v.pass()) {
        err << "error: simulated changes differ from observed beyond tolerance\n";
        return kExitValidation;
    }
    return kExitOk;
}

int cmd_plot(const Options &opt, std::ostream &out, std::ostream &err) {
    const fs::path in_dir(opt.reports.empty() ? opt.out : opt.reports);
    const auto band_file = in_dir / "band.csv";
    const auto groups_file = in_dir / "groups.csv";
    if (!fs::exists(band_file) && !fs::exists(groups_file)) {
        throw ValidationError("no band.csv or groups.csv in " + in_dir.string());
    }
    Context ctx{opt, out, err, RunConfig{}, fs::path(opt.out), {}};
    std::error_code ec;
    fs::create_directories(ctx.out_dir, ec);
    const auto read = [](const fs::path &p) {
        return fs::exists(p) ? csv::read_text_file(p) : std::string{};
    };
    plot_reports(ctx, read(band_file), read(groups_file));
    for (const auto &f : ctx.written) {
        out << "wrote " << (ctx.out_dir / f).generic_string() << "\n";
    }
    return kExitOk;
}

void add_common(CLI::App *cmd, Options &o, bool config_required) {
    auto *c = cmd->add_option("--config", o.config, "JSON run configuration");
    if (config_required) {
        c->required()->check(CLI::ExistingFile);
    }
    cmd->add_option("--seed", o.seed, "Random seed (overrides the config)");
    cmd->add_option("--out", o.out, "Output directory")->capture_default_str();
    cmd->add_option("--scale", o.scale, "Single run at this shock scale")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--factors", o.factors,
                    "Comma list of wage_shock,selfemp_shock,gma_relaxation,one_offs,tbi,all,none");
    cmd->add_option("--regime", o.regime, "Baseline GMA regime")
        ->check(CLI::IsMember({"pre", "relaxed"}));
    cmd->add_option("--format", o.format, "Report format")
        ->check(CLI::IsMember({"csv", "json", "both"}))
        ->capture_default_str();
    cmd->add_option("--threads", o.threads, "Worker threads (0 = all cores)");
}

} // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Static tax-benefit microsimulation of pandemic shocks and child poverty", "microsim"};
    app.require_subcommand(1);
    Options opt;
    using Handler = int (*)(const Options &, std::ostream &, std::ostream &);
    const std::vector<std::tuple<const char *, const char *, Handler>> commands{
        {"generate", "Generate and calibrate a synthetic population", cmd_generate},
        {"calibrate", "Calibrate a loaded population to the baseline target", cmd_calibrate},
        {"shocks", "Derive cell income-change factors from labor-survey aggregates", cmd_shocks},
        {"simulate", "Decomposition, uncertainty band, groups and TBI what-if", cmd_simulate},
        {"validate", "Compare simulated with observed income changes", cmd_validate},
        {"plot", "Render SVG charts from band.csv and groups.csv", cmd_plot},
    };
    std::vector<std::pair<CLI::App *, Handler>> handlers;
    for (const auto &[name, help, fn] : commands) {
        auto *cmd = app.add_subcommand(name, help);
        add_common(cmd, opt, std::string_view(name) != "plot");
        if (std::string_view(name) == "plot") {
            cmd->add_option("--reports", opt.reports, "Directory holding band.csv/groups.csv (default: --out)");
        }
        handlers.emplace_back(cmd, fn);
    }
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        for (const auto &[cmd, fn] : handlers) {
            if (cmd->parsed()) {
                err << "error: " << e.what() << "\n" << cmd->help();
                return kExitValidation;
            }
        }
        err << "error: " << e.what() << "\n" << app.help();
        return kExitValidation;
    }
    try {
        for (const auto &[cmd, fn] : handlers) {
            if (cmd->parsed()) {
                return fn(opt, out, err);
            }
        }
        return kExitValidation;
    } catch (const ValidationError &e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const StageError &e) {
        err << "error in " << e.what() << "\n";
        return e.is_validation() ? kExitValidation : kExitRuntime;
    } catch (const std::exception &e) {
        err << "runtime error: " << e.what() << "\n";
        return kExitRuntime;
    }
}

} // namespace microsim
