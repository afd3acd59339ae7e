// Acceptance runner: one PASS/FAIL line per criterion. Exits 1 when a
// criterion fails that is not listed after --known-red.

#include "support.hpp"

#include "microsim/calibration.hpp"
#include "microsim/cli.hpp"
#include "microsim/config.hpp"
#include "microsim/csv.hpp"
#include "microsim/rules.hpp"
#include "microsim/scenario.hpp"
#include "microsim/shock.hpp"
#include "microsim/synthetic.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

using namespace microsim;
using namespace microsim::test;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v, int digits = 2) { return csv::fixed(v, digits); }

struct Outcome {
    bool pass{true};
    std::string detail;
};

// Collects failures with a short reason; the first few are reported.
struct Check {
    std::int64_t failures{0};
    std::string first;
    void expect(bool ok, const std::string &what) {
        if (!ok) {
            if (failures == 0) {
                first = what;
            }
            ++failures;
        }
    }
};

/// Calibrated 10k-household population and engine from the shipped config.
struct Calibrated {
    RunConfig cfg;
    CalibrationResult calibration;
    std::unique_ptr<ScenarioEngine> engine;
};

Calibrated &calibrated() {
    static Calibrated c = [] {
        Calibrated out;
        out.cfg = load_config(source_path("configs/default.json"));
        const auto pop = generate_synthetic(out.cfg.synthetic, out.cfg.seed);
        CalibrationOptions o;
        o.max_iterations = out.cfg.calibration.max_iterations;
        o.tolerance = out.cfg.calibration.tolerance;
        o.scale = out.cfg.engine.scale;
        o.threads = out.cfg.threads;
        out.calibration = calibrate_to_baseline(pop, out.cfg.calibration.target_child_poverty,
                                                out.cfg.params, o);
        const auto lfs = load_lfs_aggregates(out.cfg.lfs.file);
        auto cells = compute_cell_changes(find_period(lfs, out.cfg.lfs.base_period),
                                          find_period(lfs, out.cfg.lfs.shocked_period),
                                          out.cfg.lfs.small_cell_threshold);
        out.engine = std::make_unique<ScenarioEngine>(out.calibration.population, std::move(cells),
                                                      out.cfg.params, out.cfg.engine);
        return out;
    }();
    return c;
}

// ---- 1 ------------------------------------------------------------------------

Outcome oracle_equality() {
    const auto t0 = Clock::now();
    Check chk;
    std::size_t persons = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto base = random_population(1000 + seed);
        PolicyParameters params;
        params.gma_regime = seed % 2 ? GmaRegime::relaxed : GmaRegime::pre_covid;
        const auto shocked = apply_shock(base, CellChangeTable::uniform(0.85, 0.6), 3, 1.0);
        const auto results = simulate_households(shocked, base, params, {true, false}, nullptr, 1);
        const auto annual = annual_incomes(results);
        const IncomeTable table(shocked, annual, EquivalenceScale{});
        const auto people = oracle_people(shocked, annual);
        persons += people.size();
        const std::string at = "seed " + std::to_string(seed);
        chk.expect(people.size() == table.persons().size(), at + ": person count");
        std::vector<Weighted<Ratio>> items;
        for (std::size_t i = 0; i < people.size() && i < table.persons().size(); ++i) {
            chk.expect(same(table.persons()[i].equivalized, people[i].eq), at + ": equivalized income");
            items.push_back({table.persons()[i].equivalized, table.persons()[i].weight_h});
        }
        const auto median = oracle_median(people);
        chk.expect(same(weighted_median(items), median), at + ": weighted median");
        const Fraction line{median.num * 3, median.den * 5};
        const auto rep = poverty_report(table, 36000, 72000);
        chk.expect(same(rep.lines.relative, line), at + ": relative line");
        const std::array<Fraction, 3> lines{line, Fraction{36000, 1}, Fraction{72000, 1}};
        for (auto ind : kIndicators) {
            const auto &l = lines[static_cast<std::size_t>(ind)];
            const auto c = oracle_rate(people, l, true);
            const auto a = oracle_rate(people, l, false);
            const std::string what = at + ": " + std::string(to_string(ind)) + " rate";
            chk.expect(rep.at(ind).child.below_weight_h == c.below_h &&
                           rep.at(ind).child.total_weight_h == c.total_h,
                       what + " (children)");
            chk.expect(rep.at(ind).all.below_weight_h == a.below_h &&
                           rep.at(ind).all.total_weight_h == a.total_h,
                       what + " (all)");
        }
    }
    const double secs = seconds_since(t0);
    chk.expect(secs < 10.0, "runtime");
    return {chk.failures == 0, std::to_string(persons) + " persons, " +
                                   std::to_string(chk.failures) + " mismatches, " + fmt(secs) + " s" +
                                   (chk.failures ? "; first: " + chk.first : "")};
}

// ---- 2 ------------------------------------------------------------------------

Outcome gma_truth_table_check() {
    Check chk;
    for (const auto &c : gma_truth_table()) {
        const auto pop = gma_case_population(c);
        const HouseholdContext hh{pop.households()[0], pop.members(0), pop.members(0)};
        PolicyParameters pre;
        pre.gma_regime = GmaRegime::pre_covid;
        PolicyParameters rel;
        rel.gma_regime = GmaRegime::relaxed;
        for (int m = 1; m <= kMonths; ++m) {
            chk.expect(gma_eligible(hh, m, pre).eligible == c.eligible_pre, std::string(c.name) + " (pre)");
            chk.expect(gma_eligible(hh, m, rel).eligible == c.eligible_relaxed,
                       std::string(c.name) + " (relaxed)");
        }
    }
    return {chk.failures == 0, std::to_string(gma_truth_table().size()) + " cases x 12 months x 2 regimes" +
                                   (chk.failures ? "; first: " + chk.first : "")};
}

// ---- 3 ------------------------------------------------------------------------

Outcome cell_machinery() {
    Check chk;
    auto check_table = [&](const LfsAggregate &base, const LfsAggregate &shocked, const std::string &at) {
        const auto t = compute_cell_changes(base, shocked);
        chk.expect(t.wage_cells().size() == 534, at + ": wage cell count");
        chk.expect(t.selfemp_cells().size() == 21, at + ": self-employment cell count");
        for (std::size_t i = 0; i < kWageCellCount; ++i) {
            const auto it = base.wage.find(wage_cell_key(i));
            const auto count = it == base.wage.end() ? 0 : it->second.count;
            if (count < 1000) {
                chk.expect(t.wage_cells()[i].factor == 1.0, at + ": small wage cell not neutral");
            }
        }
        for (std::size_t i = 0; i < kSelfEmpCellCount; ++i) {
            const auto it = base.selfemp.find(selfemp_cell_key(i));
            const auto count = it == base.selfemp.end() ? 0 : it->second.count;
            if (count < 1000) {
                chk.expect(t.selfemp_cells()[i].factor == 1.0, at + ": small self-employment cell not neutral");
            }
        }
    };
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        const auto [base, shocked] = random_lfs_pair(seed);
        check_table(base, shocked, "random seed " + std::to_string(seed));
    }
    const auto lfs = load_lfs_aggregates(source_path("data/lfs_aggregates.csv"));
    check_table(find_period(lfs, "2019"), find_period(lfs, "2020"), "shipped aggregates");
    check_table(LfsAggregate{"a", 4, {}, {}}, LfsAggregate{"b", 4, {}, {}}, "empty aggregates");
    return {chk.failures == 0,
            "202 aggregate pairs" + (chk.failures ? "; first: " + chk.first : std::string{})};
}

// ---- 4 ------------------------------------------------------------------------

Outcome headcount() {
    const auto h = headcount_from_pp(4.6, 407865);
    return {h == 18762, "headcount_from_pp(4.6, 407865) = " + std::to_string(h)};
}

// ---- 5 ------------------------------------------------------------------------

Outcome sign_pattern() {
    const auto t0 = Clock::now();
    auto &c = calibrated();
    const auto d = c.engine->decompose(c.cfg.scenario);
    const double secs = seconds_since(t0);
    const auto rate = [&](std::size_t col, Indicator ind) {
        return d.columns[col] ? d.columns[col]->at(ind).child.rate().value_or(NAN) : NAN;
    };
    const double base = rate(0, Indicator::relative);
    const double comb = rate(5, Indicator::relative);
    const double delta_pp = (comb - base) * 100.0;
    const double ext0 = rate(0, Indicator::abs_extreme);
    Check chk;
    chk.expect(std::abs(base - 0.278) <= 0.005, "baseline outside 27.8% +/- 0.5pp");
    chk.expect(delta_pp >= 3.0 && delta_pp <= 6.0, "combined change outside +3..+6pp");
    chk.expect(rate(1, Indicator::relative) > base, "wage-only does not raise the relative rate");
    chk.expect(rate(2, Indicator::relative) > base, "self-employment-only does not raise the relative rate");
    chk.expect(rate(3, Indicator::abs_extreme) < ext0, "GMA-only does not lower the extreme rate");
    chk.expect(rate(4, Indicator::abs_extreme) < ext0, "one-offs-only does not lower the extreme rate");
    chk.expect(rate(5, Indicator::abs_extreme) < ext0, "combined extreme rate not below baseline");
    chk.expect(secs < 60.0, "runtime");
    std::ostringstream s;
    s << "baseline " << fmt(base * 100) << "%, combined " << (delta_pp >= 0 ? "+" : "") << fmt(delta_pp)
      << "pp; relative wage/selfemp " << fmt(rate(1, Indicator::relative) * 100) << "/"
      << fmt(rate(2, Indicator::relative) * 100) << "%; extreme base/gma/oneoffs/combined "
      << fmt(ext0 * 100) << "/" << fmt(rate(3, Indicator::abs_extreme) * 100) << "/"
      << fmt(rate(4, Indicator::abs_extreme) * 100) << "/" << fmt(rate(5, Indicator::abs_extreme) * 100)
      << "%; " << fmt(secs) << " s";
    if (chk.failures) {
        s << "; first: " << chk.first;
    }
    return {chk.failures == 0, s.str()};
}

// ---- 6 ------------------------------------------------------------------------

Outcome band_ordering() {
    auto &c = calibrated();
    const auto band = c.engine->uncertainty_band(c.cfg.scenario, {0.8, 1.0, 1.2});
    std::array<double, 3> r{};
    for (std::size_t i = 0; i < 3; ++i) {
        r[i] = band.points[i].report.at(Indicator::relative).child.rate().value_or(NAN);
    }
    const double gap_low = (r[1] - r[0]) * 100.0;
    const double gap_high = (r[2] - r[1]) * 100.0;
    const bool ok = gap_low > 0.1 && gap_high > 0.1;
    return {ok, fmt(r[0] * 100) + "% < " + fmt(r[1] * 100) + "% < " + fmt(r[2] * 100) + "% (gaps " +
                    fmt(gap_low) + ", " + fmt(gap_high) + " pp)"};
}

// ---- 7 ------------------------------------------------------------------------

Outcome validation_harness() {
    const auto v = validate_against_observed({0.05, -0.116}, {0.098, -0.107}, {5.0, 2.0});
    const bool ok = v.rows.size() == 2 && std::abs(v.rows[0].gap_pp - 4.8) < 1e-9 &&
                    std::abs(v.rows[1].gap_pp - 0.9) < 1e-9 && v.rows[0].pass && v.rows[1].pass &&
                    v.pass();
    std::string detail = "gaps " + fmt(v.rows.at(0).gap_pp, 1) + "pp, " + fmt(v.rows.at(1).gap_pp, 1) +
                         "pp at tolerances 5pp, 2pp";
    // The simulated changes of the calibrated run, for information.
    auto &c = calibrated();
    const auto sim = c.engine->simulated_changes(c.cfg.scenario);
    detail += "; calibrated run simulates wage " + fmt(sim.wage * 100, 1) + "%, self-employment " +
              fmt(sim.self_employment * 100, 1) + "%";
    return {ok, detail};
}

// ---- 8 ------------------------------------------------------------------------

TbiStatistics statistics_of(const Population &pop, const PolicyParameters &params) {
    const auto annual = annual_incomes(simulate_households(pop, pop, params, {}, nullptr, 1));
    return {median_per_capita_income(pop, annual),
            relative_poverty_line(IncomeTable(pop, annual, EquivalenceScale{}))};
}

constexpr unsigned kAssetFailures = kOtherRealEstate | kRecentCar | kAnyCar | kLargeLand | kAnyLand;

/// Random factors in [lo, hi] in every cell.
CellChangeTable random_cells(std::mt19937_64 &rng, double lo, double hi) {
    std::uniform_real_distribution<double> f(lo, hi);
    CellChangeTable t;
    for (std::size_t i = 0; i < kWageCellCount; ++i) {
        t.set_wage(wage_cell_key(i), {f(rng), CellProvenance::estimated});
    }
    for (std::size_t i = 0; i < kSelfEmpCellCount; ++i) {
        t.set_selfemp(selfemp_cell_key(i), {f(rng), CellProvenance::estimated});
    }
    return t;
}

// Shocked population together with the pre-shock profile it came from.
struct Sample {
    Population current;
    Population base;
    bool non_increasing;
};

Outcome transfer_monotonicity() {
    PolicyParameters pre;
    pre.gma_regime = GmaRegime::pre_covid;
    PolicyParameters rel;
    rel.gma_regime = GmaRegime::relaxed;

    // 1,000 households: arbitrary month-to-month profiles, step profiles
    // shocked up or down, and step profiles shocked down only.
    std::vector<Sample> samples;
    std::int64_t households = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        std::mt19937_64 rng(seed);
        RandomPopulationOptions o;
        o.min_households = o.max_households = 100;
        const int start = std::uniform_int_distribution<int>(1, kMonths)(rng);
        if (seed <= 4) {
            auto p = random_population(7000 + seed, o);
            samples.push_back({p, p, false});
        } else {
            o.month_noise = 0.0;
            const auto flat = random_population(8000 + seed, o);
            const bool down = seed > 7;
            samples.push_back({apply_shock(flat, random_cells(rng, 0.0, down ? 1.0 : 1.5), start, 1.0), flat, down});
        }
        households += static_cast<std::int64_t>(samples.back().current.household_count());
    }

    std::int64_t window = 0;      // relaxation lowers a month on a rising profile
    std::int64_t cliff = 0;       // another transfer lifts income past the TBI threshold
    std::int64_t other = 0;
    std::int64_t containment = 0; // pre-COVID recipient refused by the relaxed regime
    std::int64_t restricted = 0;  // violations on non-increasing profiles with the TBI off
    std::int64_t asset = 0;
    for (const auto &s : samples) {
        const auto stats = statistics_of(s.base, pre);
        // Ledgers for every combination of regime, one-offs and TBI.
        std::map<std::tuple<bool, bool, bool>, std::vector<HouseholdFiscalResult>> runs;
        for (bool relaxed : {false, true}) {
            for (bool oneoffs : {false, true}) {
                for (bool tbi : {false, true}) {
                    runs[{relaxed, oneoffs, tbi}] = simulate_households(
                        s.current, s.base, relaxed ? rel : pre, {oneoffs, tbi}, &stats, 1);
                }
            }
        }
        // Each transfer switched on against every setting of the other two.
        for (const auto &[key, on] : runs) {
            const auto [relaxed, oneoffs, tbi] = key;
            const std::array<std::pair<bool, std::tuple<bool, bool, bool>>, 3> offs{{
                {relaxed, {false, oneoffs, tbi}},
                {oneoffs, {relaxed, false, tbi}},
                {tbi, {relaxed, oneoffs, false}},
            }};
            for (std::size_t k = 0; k < offs.size(); ++k) {
                if (!offs[k].first) {
                    continue;
                }
                const auto &off = runs.at(offs[k].second);
                for (std::size_t h = 0; h < on.size(); ++h) {
                    for (std::size_t m = 0; m < kMonths; ++m) {
                        const auto &a = off[h].months[m];
                        const auto &b = on[h].months[m];
                        if (b.total() >= a.total()) {
                            continue;
                        }
                        if (b.tbi < a.tbi) {
                            ++cliff;
                        } else if (k == 0) {
                            ++window;
                        } else {
                            ++other;
                        }
                        if (s.non_increasing && !tbi) {
                            ++restricted;
                        }
                    }
                }
            }
        }
        for (std::size_t h = 0; h < s.current.household_count(); ++h) {
            const HouseholdContext hh{s.current.households()[h], s.current.members(h), s.base.members(h)};
            for (int m = 1; m <= kMonths; ++m) {
                const auto p = gma_eligible(hh, m, pre);
                const auto r = gma_eligible(hh, m, rel);
                asset += (r.failures & kAssetFailures & ~p.failures) ? 1 : 0;
                if (p.eligible && !r.eligible) {
                    ++containment;
                    restricted += s.non_increasing ? 1 : 0;
                }
            }
        }
    }
    const std::int64_t literal = window + cliff + other + containment;
    std::ostringstream d;
    d << households << " households, " << literal << " violations of the literal property ("
      << window << " months lowered by relaxing GMA on a rising income, " << cliff
      << " months where another transfer lifts income past the TBI threshold, " << containment
      << " household-months where a pre-COVID recipient fails the one-month test, " << other
      << " other); restricted form (non-increasing incomes, TBI off): " << restricted
      << " violations; asset tests: " << asset << " violations";
    return {literal == 0 && asset == 0, d.str()};
}

// ---- 9 ------------------------------------------------------------------------

Outcome determinism() {
    const auto root = fs::temp_directory_path() / "microsim_acceptance_determinism";
    fs::remove_all(root);
    const auto cfg = source_path("configs/default.json").string();
    const auto run = [&](const std::string &name, const std::string &threads) {
        std::ostringstream out;
        std::ostringstream err;
        const int code = run_cli({"simulate", "--config", cfg, "--out", (root / name).string(),
                                  "--threads", threads},
                                 out, err);
        std::map<std::string, std::string> files;
        for (const auto &e : fs::directory_iterator(root / name)) {
            files[e.path().filename().string()] = csv::read_text_file(e.path());
        }
        return std::pair{code, files};
    };
    const auto a = run("t1", "1");
    const auto b = run("t1_again", "1");
    const auto c = run("t4", "4");
    fs::remove_all(root);
    std::size_t svg = 0;
    for (const auto &[name, _] : a.second) {
        svg += name.ends_with(".svg") ? 1 : 0;
    }
    const bool ok = a.first == 0 && b.first == 0 && c.first == 0 && a.second == b.second &&
                    a.second == c.second && svg > 0;
    return {ok, std::to_string(a.second.size()) + " files (" + std::to_string(svg) +
                    " SVG) identical at threads 1, 1 and 4"};
}

// ---- 10 -----------------------------------------------------------------------

Outcome tbi_properties() {
    auto &c = calibrated();
    const auto &e = *c.engine;
    const auto &params = e.params();
    const auto &stats = e.tbi_statistics();
    auto spec = c.cfg.scenario;
    spec.factors.tbi = false;
    const auto without = e.run(spec);
    spec.factors.tbi = true;
    const auto with = e.run(spec);
    const auto report = e.tbi_whatif(c.cfg.scenario);
    Check chk;
    chk.expect(params.tbi.vulnerability_multiplier == 1.2, "multiplier is not 1.2");
    __int128 cost = 0;
    const auto &line = stats.relative_line;
    for (std::size_t h = 0; h < with.households.size(); ++h) {
        const Mkd award = with.households[h].months[0].tbi;
        const Mkd annual = without.households[h].disposable_annual;
        const auto size = static_cast<__int128>(e.baseline().members(h).size());
        // annual / size < 1.2 * num / den, cross-multiplied.
        const bool vulnerable =
            5 * static_cast<__int128>(annual) * line.den < 6 * static_cast<__int128>(line.num) * size;
        chk.expect((award > 0) == vulnerable, "award does not follow the vulnerability threshold");
        chk.expect(award == 0 || award == report.monthly_transfer, "award differs from the transfer");
        chk.expect(with.households[h].disposable_annual == annual + award * kMonths,
                   "TBI changed other components");
        cost += static_cast<__int128>(award) * kMonths * e.baseline().households()[h].survey_weight.hundredths();
    }
    chk.expect(static_cast<std::int64_t>(cost) == report.total_cost_h, "total cost is not the sum of awards");
    chk.expect(report.child_household_share_of_funds > report.child_household_population_share,
               "child households do not receive more than their population share");
    std::string detail = std::to_string(report.recipient_households) + " recipient households, transfer " +
                         std::to_string(report.monthly_transfer) + " MKD/month, child households get " +
                         fmt(report.child_household_share_of_funds * 100, 1) + "% of funds vs " +
                         fmt(report.child_household_population_share * 100, 1) + "% of households";
    if (chk.failures) {
        detail += "; first: " + chk.first;
    }
    return {chk.failures == 0, detail};
}

// ---- 11 -----------------------------------------------------------------------

Outcome reaggregation() {
    auto &c = calibrated();
    const auto &e = *c.engine;
    const auto rows = e.disaggregate(c.cfg.scenario, {kGroupDimensions.begin(), kGroupDimensions.end()});
    const auto post = e.run(c.cfg.scenario).report;
    const auto &pre = e.baseline_report();
    Check chk;
    for (auto d : kGroupDimensions) {
        for (auto ind : kIndicators) {
            RateResult pre_sum;
            RateResult post_sum;
            for (const auto &r : rows) {
                if (r.dimension == d && r.indicator == ind) {
                    pre_sum.below_weight_h += r.pre.below_weight_h;
                    pre_sum.total_weight_h += r.pre.total_weight_h;
                    post_sum.below_weight_h += r.post.below_weight_h;
                    post_sum.total_weight_h += r.post.total_weight_h;
                }
            }
            const std::string at = std::string(to_string(d)) + "/" + std::string(to_string(ind));
            chk.expect(pre_sum == pre.at(ind).child, at + " (pre)");
            chk.expect(post_sum == post.at(ind).child, at + " (post)");
        }
    }
    return {chk.failures == 0, std::to_string(kGroupDimensions.size()) + " dimensions x 3 indicators x pre/post" +
                                   (chk.failures ? "; first: " + chk.first : "")};
}

} // namespace

int main(int argc, char **argv) {
    std::set<std::size_t> known_red;
    for (int i = 1; i < argc; ++i) {
        if (std::string_view(argv[i]) == "--known-red" && i + 1 < argc) {
            known_red.insert(std::stoul(argv[++i]));
        } else {
            std::cerr << "usage: acceptance [--known-red N]...\n";
            return 2;
        }
    }
    const std::vector<std::pair<const char *, std::function<Outcome()>>> criteria{
        {"oracle equality", oracle_equality},
        {"GMA truth table", gma_truth_table_check},
        {"cell machinery", cell_machinery},
        {"headcount arithmetic", headcount},
        {"sign pattern", sign_pattern},
        {"uncertainty band ordering", band_ordering},
        {"validation harness", validation_harness},
        {"transfer monotonicity", transfer_monotonicity},
        {"determinism", determinism},
        {"TBI properties", tbi_properties},
        {"reaggregation", reaggregation},
    };
    std::vector<std::size_t> failed;
    bool unexpected = false;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception &e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        if (!o.pass) {
            failed.push_back(i + 1);
            unexpected = unexpected || !known_red.contains(i + 1);
        }
        std::cout << "criterion " << i + 1 << " " << (o.pass ? "PASS" : "FAIL") << " "
                  << criteria[i].first << ": " << o.detail << std::endl;
    }
    if (failed.empty()) {
        std::cout << "all criteria passed\n";
        return 0;
    }
    std::cout << failed.size() << " of " << criteria.size() << " criteria failed:";
    for (auto i : failed) {
        std::cout << ' ' << i << (known_red.contains(i) ? " (known red)" : "");
    }
    std::cout << "\n";
    return unexpected ? 1 : 0;
}
