#include "microsim/report.hpp"

#include "microsim/csv.hpp"
#include "microsim/error.hpp"

#include <charconv>
#include <map>
#include <sstream>

namespace microsim::report {

namespace {

using ojson = nlohmann::ordered_json;

ojson rate_json(const RateResult &r) {
    const auto v = r.rate();
    return v ? ojson(*v) : ojson(nullptr);
}

ojson rate_detail(const RateResult &r) {
    ojson j;
    j["rate"] = rate_json(r);
    j["below_weight_h"] = r.below_weight_h;
    j["total_weight_h"] = r.total_weight_h;
    return j;
}

std::string line_field(const Ratio &line) { return csv::fixed(line.to_double(), 2); }

std::optional<double> parse_rate(const csv::Table &t, std::size_t row, std::size_t col) {
    const auto &s = t.cell(row, col);
    if (s.empty()) {
        return std::nullopt;
    }
    double v = 0.0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size() || v < 0.0 || v > 1.0) {
        t.fail(row, col, "expected a rate in [0, 1]");
    }
    return v;
}

double parse_number(const csv::Table &t, std::size_t row, std::size_t col) {
    const auto &s = t.cell(row, col);
    double v = 0.0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || p != s.data() + s.size()) {
        t.fail(row, col, "expected a number");
    }
    return v;
}

} // namespace

std::string rate_field(const RateResult &r) {
    const auto v = r.rate();
    return v ? csv::fixed(*v, 6) : std::string{};
}

std::string weight_field(std::int64_t hundredths) {
    return SurveyWeight::from_hundredths(hundredths).to_string();
}

std::string decomposition_csv(const DecompositionResult &d) {
    csv::Writer w({"indicator", "column", "name", "populated", "child_rate", "child_headcount",
                   "all_rate", "line_annual"});
    for (auto ind : kIndicators) {
        for (std::size_t c = 0; c < kDecompositionColumns; ++c) {
            const auto &col = d.columns[c];
            if (!col) {
                w.row({std::string(to_string(ind)), std::to_string(c + 1),
                       std::string(decomposition_column_name(c)), "0", "", "", "", ""});
                continue;
            }
            const auto &res = col->at(ind);
            w.row({std::string(to_string(ind)), std::to_string(c + 1),
                   std::string(decomposition_column_name(c)), "1", rate_field(res.child),
                   weight_field(res.child.below_weight_h), rate_field(res.all),
                   line_field(col->line(ind))});
        }
    }
    return w.str();
}

ojson decomposition_json(const DecompositionResult &d) {
    ojson j;
    j["columns_on_shocked_income"] = d.columns_on_shocked_income;
    ojson cols = ojson::array();
    for (std::size_t c = 0; c < kDecompositionColumns; ++c) {
        ojson col;
        col["column"] = c + 1;
        col["name"] = decomposition_column_name(c);
        col["populated"] = d.columns[c].has_value();
        if (d.columns[c]) {
            const auto &rep = *d.columns[c];
            ojson inds;
            for (auto ind : kIndicators) {
                ojson e;
                e["line_annual"] = rep.line(ind).to_double();
                e["child"] = rate_detail(rep.at(ind).child);
                e["all"] = rate_detail(rep.at(ind).all);
                inds[std::string(to_string(ind))] = e;
            }
            col["indicators"] = inds;
        }
        cols.push_back(col);
    }
    j["columns"] = cols;
    return j;
}

std::string scenario_csv(const PovertyReport &r, double shock_scale) {
    csv::Writer w({"indicator", "shock_scale", "child_rate", "child_headcount", "all_rate",
                   "line_annual"});
    for (auto ind : kIndicators) {
        const auto &res = r.at(ind);
        w.row({std::string(to_string(ind)), csv::fixed(shock_scale, 2), rate_field(res.child),
               weight_field(res.child.below_weight_h), rate_field(res.all), line_field(r.line(ind))});
    }
    return w.str();
}

ojson scenario_json(const PovertyReport &r, double shock_scale) {
    ojson j;
    j["shock_scale"] = shock_scale;
    for (auto ind : kIndicators) {
        ojson e;
        e["line_annual"] = r.line(ind).to_double();
        e["child"] = rate_detail(r.at(ind).child);
        e["all"] = rate_detail(r.at(ind).all);
        j["indicators"][std::string(to_string(ind))] = e;
    }
    return j;
}

std::string band_csv(const UncertaintyBand &b) {
    csv::Writer w({"shock_scale", "relative_child_rate", "baseline_rate", "delta_pp", "headcount"});
    for (const auto &p : b.points) {
        w.row({csv::fixed(p.scale, 2), rate_field(p.report.at(Indicator::relative).child),
               csv::fixed(b.baseline_rate, 6), csv::fixed(p.delta_pp, 4),
               std::to_string(p.headcount)});
    }
    return w.str();
}

ojson band_json(const UncertaintyBand &b) {
    ojson j;
    j["baseline_rate"] = b.baseline_rate;
    ojson pts = ojson::array();
    for (const auto &p : b.points) {
        ojson e;
        e["shock_scale"] = p.scale;
        e["relative_child"] = rate_detail(p.report.at(Indicator::relative).child);
        e["delta_pp"] = p.delta_pp;
        e["headcount"] = p.headcount;
        pts.push_back(e);
    }
    j["points"] = pts;
    return j;
}

std::string groups_csv(const std::vector<GroupRow> &rows) {
    csv::Writer w({"dimension", "group", "indicator", "pre_rate", "post_rate", "pre_headcount",
                   "post_headcount", "children"});
    for (const auto &r : rows) {
        w.row({std::string(to_string(r.dimension)), r.group, std::string(to_string(r.indicator)),
               rate_field(r.pre), rate_field(r.post), weight_field(r.pre.below_weight_h),
               weight_field(r.post.below_weight_h), weight_field(r.post.total_weight_h)});
    }
    return w.str();
}

ojson groups_json(const std::vector<GroupRow> &rows) {
    ojson arr = ojson::array();
    for (const auto &r : rows) {
        ojson e;
        e["dimension"] = to_string(r.dimension);
        e["group"] = r.group;
        e["indicator"] = to_string(r.indicator);
        e["pre"] = rate_detail(r.pre);
        e["post"] = rate_detail(r.post);
        arr.push_back(e);
    }
    return ojson{{"groups", arr}};
}

std::string tbi_csv(const TbiReport &t) {
    csv::Writer w({"metric", "value"});
    w.row({"monthly_transfer", std::to_string(t.monthly_transfer)});
    w.row({"recipient_households", std::to_string(t.recipient_households)});
    w.row({"recipient_households_weighted", weight_field(t.recipient_weight_h)});
    w.row({"total_annual_cost", weight_field(t.total_cost_h)});
    w.row({"child_household_share_of_funds", csv::fixed(t.child_household_share_of_funds, 6)});
    w.row({"child_household_population_share", csv::fixed(t.child_household_population_share, 6)});
    for (auto ind : kIndicators) {
        const std::string name(to_string(ind));
        w.row({name + "_child_rate_without_tbi", rate_field(t.without_tbi.at(ind).child)});
        w.row({name + "_child_rate_with_tbi", rate_field(t.with_tbi.at(ind).child)});
    }
    return w.str();
}

ojson tbi_json(const TbiReport &t) {
    ojson j;
    j["monthly_transfer"] = t.monthly_transfer;
    j["recipient_households"] = t.recipient_households;
    j["recipient_weight_h"] = t.recipient_weight_h;
    j["total_cost_h"] = t.total_cost_h;
    j["child_household_share_of_funds"] = t.child_household_share_of_funds;
    j["child_household_population_share"] = t.child_household_population_share;
    for (auto ind : kIndicators) {
        const std::string name(to_string(ind));
        j["child_rates"][name]["without_tbi"] = rate_detail(t.without_tbi.at(ind).child);
        j["child_rates"][name]["with_tbi"] = rate_detail(t.with_tbi.at(ind).child);
    }
    return j;
}

std::string validation_csv(const ValidationReport &v) {
    csv::Writer w({"source", "simulated_change", "observed_change", "gap_pp", "tolerance_pp", "pass"});
    for (const auto &r : v.rows) {
        w.row({std::string(to_string(r.source)), csv::fixed(r.simulated, 6),
               csv::fixed(r.observed, 6), csv::fixed(r.gap_pp, 4), csv::fixed(r.tolerance_pp, 4),
               r.pass ? "1" : "0"});
    }
    return w.str();
}

ojson validation_json(const ValidationReport &v) {
    ojson arr = ojson::array();
    for (const auto &r : v.rows) {
        ojson e;
        e["source"] = to_string(r.source);
        e["simulated_change"] = r.simulated;
        e["observed_change"] = r.observed;
        e["gap_pp"] = r.gap_pp;
        e["tolerance_pp"] = r.tolerance_pp;
        e["pass"] = r.pass;
        arr.push_back(e);
    }
    return ojson{{"rows", arr}, {"pass", v.pass()}};
}

std::string decomposition_text(const DecompositionResult &d, std::int64_t child_population) {
    std::ostringstream out;
    out << "Child poverty by factor (rates in %)\n";
    out << "indicator     ";
    for (std::size_t c = 0; c < kDecompositionColumns; ++c) {
        out << " (" << c + 1 << ")    ";
    }
    out << '\n';
    for (auto ind : kIndicators) {
        std::string name(to_string(ind));
        name.resize(13, ' ');
        out << name << ' ';
        for (const auto &col : d.columns) {
            const auto r = col ? col->at(ind).child.rate() : std::nullopt;
            std::string cell = r ? csv::fixed(*r * 100.0, 1) : std::string("-");
            cell.resize(8, ' ');
            out << cell;
        }
        out << '\n';
    }
    if (d.columns[0] && d.columns[5]) {
        const auto base = d.columns[0]->at(Indicator::relative).child.rate();
        const auto comb = d.columns[5]->at(Indicator::relative).child.rate();
        if (base && comb) {
            const double pp = (*comb - *base) * 100.0;
            out << "combined change in relative child poverty: " << csv::fixed(pp, 2) << " pp ("
                << headcount_from_pp(pp, child_population) << " children)\n";
        }
    }
    return out.str();
}

std::string dump(const ojson &j) { return j.dump(2) + "\n"; }

BandSeries parse_band_csv(std::string_view text, std::string source_name) {
    const auto t = csv::Table::parse(text, std::move(source_name));
    const auto cs = t.column("shock_scale");
    const auto cr = t.column("relative_child_rate");
    const auto ch = t.column("headcount");
    BandSeries s;
    for (std::size_t i = 0; i < t.rows(); ++i) {
        s.scales.push_back(parse_number(t, i, cs));
        s.rates.push_back(parse_rate(t, i, cr));
        s.headcounts.push_back(t.integer(i, ch));
    }
    return s;
}

std::vector<GroupSeries> parse_groups_csv(std::string_view text, std::string source_name) {
    const auto t = csv::Table::parse(text, std::move(source_name));
    const auto cd = t.column("dimension");
    const auto cg = t.column("group");
    const auto ci = t.column("indicator");
    const auto cpre = t.column("pre_rate");
    const auto cpost = t.column("post_rate");
    std::vector<GroupSeries> out;
    for (std::size_t i = 0; i < t.rows(); ++i) {
        if (t.cell(i, ci) != "relative") {
            continue;
        }
        const auto &dim = t.cell(i, cd);
        parse_group_dimension(dim);
        if (out.empty() || out.back().dimension != dim) {
            for (const auto &s : out) {
                if (s.dimension == dim) {
                    t.fail(i, cd, "dimension rows must be contiguous");
                }
            }
            out.push_back(GroupSeries{dim, {}, {}, {}});
        }
        auto &s = out.back();
        s.groups.push_back(t.cell(i, cg));
        s.pre.push_back(parse_rate(t, i, cpre));
        s.post.push_back(parse_rate(t, i, cpost));
    }
    return out;
}

} // namespace microsim::report
