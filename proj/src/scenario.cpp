#include "microsim/scenario.hpp"

#include "microsim/error.hpp"
#include "microsim/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace microsim {

namespace {

constexpr std::array<std::string_view, 5> kFactorNames{"wage_shock", "selfemp_shock",
                                                       "gma_relaxation", "one_offs", "tbi"};

bool &factor_ref(FactorSwitches &f, std::size_t i) {
    switch (i) {
    case 0:
        return f.wage_shock;
    case 1:
        return f.selfemp_shock;
    case 2:
        return f.gma_relaxation;
    case 3:
        return f.one_offs;
    default:
        return f.tbi;
    }
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && s.front() == ' ') {
        s.remove_prefix(1);
    }
    while (!s.empty() && s.back() == ' ') {
        s.remove_suffix(1);
    }
    return s;
}

} // namespace

FactorSwitches FactorSwitches::parse(std::string_view list) {
    FactorSwitches f;
    while (true) {
        const auto comma = list.find(',');
        const auto name = trim(list.substr(0, comma));
        if (name == "all") {
            const bool tbi = f.tbi;
            f = all_four();
            f.tbi = tbi;
        } else if (name != "none") {
            const auto it = std::find(kFactorNames.begin(), kFactorNames.end(), name);
            if (it == kFactorNames.end()) {
                throw ValidationError("unknown factor '" + std::string(name) +
                                      "' (expected wage_shock, selfemp_shock, gma_relaxation, "
                                      "one_offs, tbi, all or none)");
            }
            factor_ref(f, static_cast<std::size_t>(it - kFactorNames.begin())) = true;
        }
        if (comma == std::string_view::npos) {
            break;
        }
        list.remove_prefix(comma + 1);
    }
    return f;
}

std::string FactorSwitches::to_string() const {
    std::string out;
    auto copy = *this;
    for (std::size_t i = 0; i < kFactorNames.size(); ++i) {
        if (factor_ref(copy, i)) {
            if (!out.empty()) {
                out += ',';
            }
            out += kFactorNames[i];
        }
    }
    return out.empty() ? "none" : out;
}

int FactorSwitches::decomposition_count() const noexcept {
    return int{wage_shock} + int{selfemp_shock} + int{gma_relaxation} + int{one_offs};
}

void ScenarioSpec::validate() const {
    if (!(shock_scale > 0.0) || !std::isfinite(shock_scale)) {
        throw ValidationError("shock_scale must be > 0");
    }
    if (shock_start_month < 1 || shock_start_month > kMonths) {
        throw ValidationError("shock_start_month must be in 1..12");
    }
}

std::vector<HouseholdFiscalResult> simulate_households(const Population &current,
                                                       const Population &baseline,
                                                       const PolicyParameters &params,
                                                       const PipelineFlags &flags,
                                                       const TbiStatistics *tbi_stats,
                                                       unsigned threads) {
    if (current.household_count() != baseline.household_count() ||
        current.persons().size() != baseline.persons().size()) {
        throw ValidationError("current and baseline populations differ in structure");
    }
    std::vector<HouseholdFiscalResult> out(current.household_count());
    parallel_for(out.size(), threads, [&](std::size_t h) {
        const HouseholdContext ctx{current.households()[h], current.members(h), baseline.members(h)};
        out[h] = disposable_income(ctx, params, flags, tbi_stats);
    });
    return out;
}

std::vector<Mkd> annual_incomes(const std::vector<HouseholdFiscalResult> &results) {
    std::vector<Mkd> v;
    v.reserve(results.size());
    for (const auto &r : results) {
        v.push_back(r.disposable_annual);
    }
    return v;
}

double baseline_child_poverty(const Population &pop, const PolicyParameters &params,
                              const EquivalenceScale &scale, unsigned threads) {
    const auto results = simulate_households(pop, pop, params, {}, nullptr, threads);
    const auto income = annual_incomes(results);
    const IncomeTable table(pop, income, scale);
    const auto line = relative_poverty_line(table);
    const auto rate = poverty_rate(table, line, child_filter()).rate();
    if (!rate) {
        throw ValidationError("population has no children");
    }
    return *rate;
}

Ratio median_per_capita_income(const Population &pop, std::span<const Mkd> annual_income) {
    std::vector<Weighted<Ratio>> items;
    items.reserve(pop.household_count());
    for (std::size_t h = 0; h < pop.household_count(); ++h) {
        items.push_back({Ratio{annual_income[h], static_cast<std::int64_t>(pop.members(h).size())},
                         pop.households()[h].survey_weight.hundredths()});
    }
    return weighted_median(std::move(items));
}

std::string_view decomposition_column_name(std::size_t column) {
    static constexpr std::array<std::string_view, kDecompositionColumns> names{
        "baseline", "wage_only", "selfemp_only", "gma_only", "oneoffs_only", "combined"};
    return column < names.size() ? names[column] : "?";
}

std::string_view to_string(GroupDimension d) {
    switch (d) {
    case GroupDimension::sex:
        return "sex";
    case GroupDimension::child_age_band:
        return "child_age_band";
    case GroupDimension::three_plus_children:
        return "three_plus_children";
    case GroupDimension::adult_education:
        return "adult_education";
    }
    return "?";
}

GroupDimension parse_group_dimension(std::string_view s) {
    for (auto d : kGroupDimensions) {
        if (to_string(d) == s) {
            return d;
        }
    }
    throw ValidationError("unknown disaggregation dimension '" + std::string(s) + "'");
}

std::vector<std::string> group_values(GroupDimension d) {
    switch (d) {
    case GroupDimension::sex:
        return {"male", "female"};
    case GroupDimension::child_age_band:
        return {"0-5", "6-14", "15-17"};
    case GroupDimension::three_plus_children:
        return {"no", "yes"};
    case GroupDimension::adult_education:
        return {"primary_or_less", "secondary", "tertiary_plus", "no_adults"};
    }
    return {};
}

std::string group_of(const PersonRecord &p, GroupDimension d) {
    switch (d) {
    case GroupDimension::sex:
        return std::string(to_string(p.sex));
    case GroupDimension::child_age_band: {
        const auto band = p.child_age_band();
        return band ? std::string(to_string(*band)) : std::string("adult");
    }
    case GroupDimension::three_plus_children:
        return p.three_plus_children ? "yes" : "no";
    case GroupDimension::adult_education:
        return std::string(to_string(p.household_education));
    }
    return "?";
}

bool ValidationReport::pass() const noexcept {
    return std::all_of(rows.begin(), rows.end(), [](const ValidationRow &r) { return r.pass; });
}

ValidationReport validate_against_observed(const SourceChanges &simulated,
                                           const SourceChanges &observed,
                                           const SourceChanges &tolerance_pp) {
    // Slack for decimal inputs such as 0.098 - 0.05 that are not exact in binary.
    constexpr double kSlackPp = 1e-9;
    ValidationReport rep;
    const auto add = [&](IncomeSource s, double sim, double obs, double tol) {
        ValidationRow r;
        r.source = s;
        r.simulated = sim;
        r.observed = obs;
        r.gap_pp = std::abs(sim - obs) * 100.0;
        r.tolerance_pp = tol;
        r.pass = r.gap_pp <= tol + kSlackPp;
        rep.rows.push_back(r);
    };
    add(IncomeSource::wage, simulated.wage, observed.wage, tolerance_pp.wage);
    add(IncomeSource::self_employment, simulated.self_employment, observed.self_employment,
        tolerance_pp.self_employment);
    return rep;
}

ScenarioEngine::ScenarioEngine(Population baseline, CellChangeTable cells, PolicyParameters params,
                               EngineSettings settings)
    : baseline_{std::move(baseline)}, cells_{std::move(cells)}, params_{std::move(params)},
      settings_{settings} {
    params_.validate();
    if (baseline_.empty()) {
        throw ValidationError("scenario engine needs a non-empty population");
    }
    if (!(settings_.absolute_extreme_low > 0 &&
          settings_.absolute_extreme_low < settings_.absolute_upper_middle)) {
        throw ValidationError("absolute poverty lines must satisfy 0 < extreme_low < upper_middle");
    }
    if (settings_.child_population <= 0) {
        throw ValidationError("child_population must be > 0");
    }
    const auto outcome = run(ScenarioSpec{});
    baseline_report_ = outcome.report;
    const auto income = annual_incomes(outcome.households);
    tbi_stats_.median_per_capita_annual = median_per_capita_income(baseline_, income);
    tbi_stats_.relative_line = baseline_report_.lines.relative;
}

Population ScenarioEngine::shocked_population(const ScenarioSpec &spec) const {
    spec.validate();
    const auto &f = spec.factors;
    if (!f.wage_shock && !f.selfemp_shock) {
        return baseline_;
    }
    return in_stage("shock", [&] {
        return apply_shock(baseline_, cells_, spec.shock_start_month, spec.shock_scale,
                           ShockTargets{f.wage_shock, f.selfemp_shock}, settings_.threads);
    });
}

ScenarioOutcome ScenarioEngine::run(const ScenarioSpec &spec) const {
    const auto current = shocked_population(spec);
    auto params = params_;
    if (spec.factors.gma_relaxation) {
        params.gma_regime = GmaRegime::relaxed;
    }
    const PipelineFlags flags{spec.factors.one_offs, spec.factors.tbi};
    auto households = in_stage("fiscal_rules", [&] {
        return simulate_households(current, baseline_, params, flags,
                                   flags.tbi ? &tbi_stats_ : nullptr, settings_.threads);
    });
    return in_stage("poverty_metrics", [&] {
        const auto income = annual_incomes(households);
        IncomeTable table(current, income, settings_.scale);
        auto report = poverty_report(table, settings_.absolute_extreme_low,
                                     settings_.absolute_upper_middle);
        return ScenarioOutcome{std::move(report), std::move(households), std::move(table)};
    });
}

DecompositionResult ScenarioEngine::decompose(const ScenarioSpec &spec) const {
    DecompositionResult out;
    out.columns_on_shocked_income = settings_.columns_on_shocked_income;
    const auto &f = spec.factors;
    const auto column = [&](FactorSwitches sw) {
        ScenarioSpec s = spec;
        s.factors = sw;
        return run(s).report;
    };
    FactorSwitches shocks;
    if (settings_.columns_on_shocked_income) {
        shocks.wage_shock = true;
        shocks.selfemp_shock = true;
    }
    out.columns[0] = baseline_report_;
    if (f.wage_shock) {
        out.columns[1] = column({true, false, false, false, false});
    }
    if (f.selfemp_shock) {
        out.columns[2] = column({false, true, false, false, false});
    }
    if (f.gma_relaxation) {
        auto sw = shocks;
        sw.gma_relaxation = true;
        out.columns[3] = column(sw);
    }
    if (f.one_offs) {
        auto sw = shocks;
        sw.one_offs = true;
        out.columns[4] = column(sw);
    }
    if (f.decomposition_count() >= 2) {
        auto sw = f;
        sw.tbi = false;
        out.columns[5] = column(sw);
    }
    return out;
}

UncertaintyBand ScenarioEngine::uncertainty_band(const ScenarioSpec &spec,
                                                 const std::vector<double> &scales) const {
    UncertaintyBand band;
    band.baseline_rate = baseline_report_.at(Indicator::relative).child.rate().value_or(0.0);
    for (double s : scales) {
        ScenarioSpec run_spec = spec;
        run_spec.shock_scale = s;
        BandPoint p;
        p.scale = s;
        p.report = run(run_spec).report;
        const double rate = p.report.at(Indicator::relative).child.rate().value_or(0.0);
        p.delta_pp = (rate - band.baseline_rate) * 100.0;
        p.headcount = headcount_from_pp(p.delta_pp, settings_.child_population);
        band.points.push_back(std::move(p));
    }
    return band;
}

std::vector<GroupRow> ScenarioEngine::disaggregate(const ScenarioSpec &spec,
                                                   const std::vector<GroupDimension> &dimensions) const {
    const auto pre = run(ScenarioSpec{});
    const auto post = run(spec);
    std::vector<GroupRow> rows;
    for (auto d : dimensions) {
        for (const auto &value : group_values(d)) {
            const PersonFilter filter = [d, value](const PersonRecord &p) {
                return p.is_child() && group_of(p, d) == value;
            };
            for (auto ind : kIndicators) {
                GroupRow r;
                r.dimension = d;
                r.group = value;
                r.indicator = ind;
                r.pre = poverty_rate(pre.table, pre.report.line(ind), filter);
                r.post = poverty_rate(post.table, post.report.line(ind), filter);
                rows.push_back(std::move(r));
            }
        }
    }
    return rows;
}

TbiReport ScenarioEngine::tbi_whatif(const ScenarioSpec &spec) const {
    ScenarioSpec without = spec;
    without.factors.tbi = false;
    ScenarioSpec with = spec;
    with.factors.tbi = true;
    const auto a = run(without);
    const auto b = run(with);
    TbiReport rep;
    rep.monthly_transfer = tbi_monthly_transfer(tbi_stats_, params_);
    rep.without_tbi = a.report;
    rep.with_tbi = b.report;
    __int128 child_funds = 0;
    __int128 funds = 0;
    std::int64_t child_weight = 0;
    std::int64_t weight = 0;
    for (std::size_t h = 0; h < baseline_.household_count(); ++h) {
        const auto w = baseline_.households()[h].survey_weight.hundredths();
        const auto members = baseline_.members(h);
        const bool has_child =
            std::any_of(members.begin(), members.end(), [](const Person &p) { return p.is_child(); });
        Mkd annual_award = 0;
        for (const auto &l : b.households[h].months) {
            annual_award += l.tbi;
        }
        weight += w;
        if (has_child) {
            child_weight += w;
        }
        if (annual_award > 0) {
            ++rep.recipient_households;
            rep.recipient_weight_h += w;
            funds += static_cast<__int128>(annual_award) * w;
            if (has_child) {
                child_funds += static_cast<__int128>(annual_award) * w;
            }
        }
    }
    rep.total_cost_h = static_cast<std::int64_t>(funds);
    if (funds > 0) {
        rep.child_household_share_of_funds = static_cast<double>(
            static_cast<long double>(child_funds) / static_cast<long double>(funds));
    }
    rep.child_household_population_share =
        static_cast<double>(static_cast<long double>(child_weight) / static_cast<long double>(weight));
    return rep;
}

SourceChanges ScenarioEngine::simulated_changes(const ScenarioSpec &spec) const {
    ScenarioSpec s = spec;
    s.factors.wage_shock = true;
    s.factors.selfemp_shock = true;
    const auto shocked = shocked_population(s);
    return in_stage("validation", [&] {
        return SourceChanges{
            aggregate_income_change(baseline_, shocked, IncomeSource::wage, s.shock_start_month),
            aggregate_income_change(baseline_, shocked, IncomeSource::self_employment,
                                    s.shock_start_month)};
    });
}

} // namespace microsim
