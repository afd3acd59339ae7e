#include "microsim/shock.hpp"

#include "microsim/csv.hpp"
#include "microsim/error.hpp"
#include "microsim/nace.hpp"
#include "microsim/parallel.hpp"
#include "microsim/simd/kernels.hpp"

#include <algorithm>
#include <set>

namespace microsim {

namespace {

constexpr std::array<std::string_view, 3> kBandNames{"youth_15_24", "adult_25_49",
                                                     "elderly_50_64"};

std::string format_factor(double f) { return csv::fixed(f, 6); }

} // namespace

std::string_view to_string(AgeBand b) { return kBandNames[static_cast<std::size_t>(b)]; }

AgeBand parse_age_band(std::string_view s) {
    for (std::size_t i = 0; i < kBandNames.size(); ++i) {
        if (kBandNames[i] == s) {
            return static_cast<AgeBand>(i);
        }
    }
    throw ValidationError("unknown age_band '" + std::string(s) + "'");
}

std::optional<AgeBand> age_band_of(int age) noexcept {
    if (age >= 15 && age <= 24) {
        return AgeBand::youth_15_24;
    }
    if (age >= 25 && age <= 49) {
        return AgeBand::adult_25_49;
    }
    if (age >= 50 && age <= 64) {
        return AgeBand::elderly_50_64;
    }
    return std::nullopt;
}

std::string_view to_string(CellProvenance p) {
    switch (p) {
    case CellProvenance::estimated:
        return "estimated";
    case CellProvenance::suppressed_small_cell:
        return "suppressed_small_cell";
    case CellProvenance::missing_default:
        return "missing_default";
    }
    return "?";
}

std::size_t wage_cell_index(const WageCellKey &key) {
    const auto d = nace::division_index(key.nace2);
    if (!d) {
        throw ValidationError("nace2 code " + std::to_string(key.nace2) +
                              " is not a NACE Rev.2 division");
    }
    return (*d * 2 + static_cast<std::size_t>(key.sex)) * 3 + static_cast<std::size_t>(key.age_band);
}

WageCellKey wage_cell_key(std::size_t index) {
    if (index >= kWageCellCount) {
        throw ValidationError("wage cell index out of range");
    }
    return WageCellKey{nace::divisions()[index / 6], static_cast<Sex>((index / 3) % 2),
                       static_cast<AgeBand>(index % 3)};
}

std::size_t selfemp_cell_index(SelfEmpCellKey key) {
    const auto s = nace::section_index(key.section);
    if (!s) {
        throw ValidationError(std::string("unknown NACE section '") + key.section + "'");
    }
    return *s;
}

SelfEmpCellKey selfemp_cell_key(std::size_t index) {
    if (index >= kSelfEmpCellCount) {
        throw ValidationError("self-employment cell index out of range");
    }
    return SelfEmpCellKey{nace::sections()[index]};
}

CellChangeTable CellChangeTable::uniform(double wage_factor, double selfemp_factor) {
    CellChangeTable t;
    t.wage_.fill(CellChange{wage_factor, CellProvenance::estimated});
    t.selfemp_.fill(CellChange{selfemp_factor, CellProvenance::estimated});
    return t;
}

void CellChangeTable::set_wage(const WageCellKey &key, CellChange change) {
    if (!(change.factor > 0.0)) {
        throw ValidationError("cell factor must be > 0");
    }
    wage_[wage_cell_index(key)] = change;
}

void CellChangeTable::set_selfemp(SelfEmpCellKey key, CellChange change) {
    if (!(change.factor > 0.0)) {
        throw ValidationError("cell factor must be > 0");
    }
    selfemp_[selfemp_cell_index(key)] = change;
}

CellChangeTable CellChangeTable::wage_only() const {
    auto t = *this;
    t.selfemp_.fill(CellChange{});
    return t;
}

CellChangeTable CellChangeTable::selfemp_only() const {
    auto t = *this;
    t.wage_.fill(CellChange{});
    return t;
}

namespace {

void check_aggregate(const LfsAggregate &a) {
    if (a.quarters < 1 || a.quarters > 4) {
        throw ValidationError("period " + a.period + ": quarters must be in 1..4");
    }
    const auto check = [&](const CellAggregate &c) {
        if (c.income < 0 || c.count < 0) {
            throw ValidationError("period " + a.period + ": negative income or count");
        }
    };
    for (const auto &[k, c] : a.wage) {
        wage_cell_index(k);
        check(c);
    }
    for (const auto &[k, c] : a.selfemp) {
        selfemp_cell_index(k);
        check(c);
    }
}

template <typename Key>
std::set<Key> key_set(const std::map<Key, CellAggregate> &m) {
    std::set<Key> out;
    for (const auto &[k, v] : m) {
        out.insert(k);
    }
    return out;
}

CellChange cell_change(const CellAggregate *base, const CellAggregate *shocked,
                       const LfsAggregate &b, const LfsAggregate &s, std::int64_t threshold,
                       const std::string &label) {
    if (base == nullptr) {
        return CellChange{1.0, CellProvenance::missing_default};
    }
    if (base->count < threshold) {
        return CellChange{1.0, CellProvenance::suppressed_small_cell};
    }
    if (base->income == 0) {
        return CellChange{1.0, CellProvenance::missing_default};
    }
    if (shocked->income == 0) {
        throw ValidationError("cell " + label + ": shocked income is zero, factor would be 0");
    }
    const double annual_base = static_cast<double>(base->income) * b.annualization();
    const double annual_shocked = static_cast<double>(shocked->income) * s.annualization();
    return CellChange{annual_shocked / annual_base, CellProvenance::estimated};
}

} // namespace

CellChangeTable compute_cell_changes(const LfsAggregate &base, const LfsAggregate &shocked,
                                     std::int64_t small_cell_threshold) {
    check_aggregate(base);
    check_aggregate(shocked);
    if (key_set(base.wage) != key_set(shocked.wage) ||
        key_set(base.selfemp) != key_set(shocked.selfemp)) {
        throw ValidationError("periods " + base.period + " and " + shocked.period +
                              " cover different cell universes");
    }
    CellChangeTable table;
    table.set_small_cell_threshold(small_cell_threshold);
    for (std::size_t i = 0; i < kWageCellCount; ++i) {
        const auto key = wage_cell_key(i);
        auto it = base.wage.find(key);
        const CellAggregate *b = it == base.wage.end() ? nullptr : &it->second;
        const CellAggregate *s = b ? &shocked.wage.at(key) : nullptr;
        table.set_wage(key, cell_change(b, s, base, shocked, small_cell_threshold,
                                        "wage/" + std::to_string(key.nace2)));
    }
    for (std::size_t i = 0; i < kSelfEmpCellCount; ++i) {
        const auto key = selfemp_cell_key(i);
        auto it = base.selfemp.find(key);
        const CellAggregate *b = it == base.selfemp.end() ? nullptr : &it->second;
        const CellAggregate *s = b ? &shocked.selfemp.at(key) : nullptr;
        table.set_selfemp(key, cell_change(b, s, base, shocked, small_cell_threshold,
                                           std::string("selfemp/") + key.section));
    }
    return table;
}

double effective_factor(double factor, double scale) noexcept {
    return std::max(0.0, 1.0 + scale * (factor - 1.0));
}

Population apply_shock(const Population &pop, const CellChangeTable &table, int shock_start_month,
                       double scale, ShockTargets targets, unsigned threads) {
    if (shock_start_month < 1 || shock_start_month > kMonths) {
        throw ValidationError("shock_start_month must be in 1..12");
    }
    if (!(scale >= 0.0)) {
        throw ValidationError("shock scale must be >= 0");
    }
    auto persons = std::vector<Person>(pop.persons().begin(), pop.persons().end());

    // Gather shocked months into flat buffers for the scale-and-round kernel.
    struct Slot {
        std::size_t person;
        IncomeSource source;
    };
    std::vector<Slot> slots;
    std::vector<double> values;
    std::vector<double> factors;
    const int first = shock_start_month - 1;
    const auto push = [&](std::size_t pi, IncomeSource src, double f) {
        slots.push_back({pi, src});
        const auto &stream = persons[pi].stream(src);
        for (int m = first; m < kMonths; ++m) {
            values.push_back(static_cast<double>(stream[m]));
            factors.push_back(f);
        }
    };
    for (std::size_t pi = 0; pi < persons.size(); ++pi) {
        const auto &p = persons[pi];
        if (p.labor_status == LaborStatus::employee && targets.wage) {
            if (!p.nace2) {
                throw ValidationError("person " + std::to_string(p.person_id) +
                                      ": employee without nace2");
            }
            if (auto band = age_band_of(p.age)) {
                const auto &cell = table.wage(WageCellKey{*p.nace2, p.sex, *band});
                push(pi, IncomeSource::wage, effective_factor(cell.factor, scale));
            }
        } else if (p.labor_status == LaborStatus::self_employed && targets.self_employment) {
            if (!p.nace2) {
                throw ValidationError("person " + std::to_string(p.person_id) +
                                      ": self-employed without nace2");
            }
            if (auto section = nace::section_of(*p.nace2)) {
                const auto &cell = table.selfemp(SelfEmpCellKey{*section});
                push(pi, IncomeSource::self_employment, effective_factor(cell.factor, scale));
            }
        }
    }

    std::vector<double> out(values.size());
    constexpr std::size_t kChunk = 4096;
    const std::size_t chunks = (values.size() + kChunk - 1) / kChunk;
    parallel_for(chunks, threads, [&](std::size_t c) {
        const std::size_t begin = c * kChunk;
        const std::size_t len = std::min(kChunk, values.size() - begin);
        simd::scale_round(std::span(values).subspan(begin, len),
                          std::span(factors).subspan(begin, len),
                          std::span(out).subspan(begin, len));
    });

    const std::size_t per_slot = static_cast<std::size_t>(kMonths - first);
    for (std::size_t s = 0; s < slots.size(); ++s) {
        auto &stream = persons[slots[s].person].stream(slots[s].source);
        for (std::size_t k = 0; k < per_slot; ++k) {
            stream[first + k] = static_cast<Mkd>(out[s * per_slot + k]);
        }
    }
    return Population(std::move(persons), {pop.households().begin(), pop.households().end()},
                      pop.base_year(), pop.provenance());
}

namespace {

__int128 weighted_total(const Population &pop, IncomeSource source, int from_month) {
    __int128 total = 0;
    for (std::size_t h = 0; h < pop.household_count(); ++h) {
        __int128 hh = 0;
        for (const auto &p : pop.members(h)) {
            const auto &s = p.stream(source);
            for (int m = from_month; m <= kMonths; ++m) {
                hh += s[static_cast<std::size_t>(m - 1)];
            }
        }
        total += hh * pop.households()[h].survey_weight.hundredths();
    }
    return total;
}

} // namespace

double aggregate_income_change(const Population &before, const Population &after,
                               IncomeSource source, int from_month) {
    if (from_month < 1 || from_month > kMonths) {
        throw ValidationError("aggregate_income_change: month must be in 1..12");
    }
    if (before.persons().size() != after.persons().size() ||
        !std::equal(before.persons().begin(), before.persons().end(), after.persons().begin(),
                    [](const Person &a, const Person &b) { return a.person_id == b.person_id; })) {
        throw ValidationError("aggregate_income_change: populations cover different persons");
    }
    const auto b = weighted_total(before, source, from_month);
    const auto a = weighted_total(after, source, from_month);
    if (b == 0) {
        throw ValidationError("aggregate_income_change: zero base total for " +
                              std::string(to_string(source)));
    }
    return static_cast<double>(static_cast<long double>(a - b) / static_cast<long double>(b));
}

double observed_income_change(const LfsAggregate &base, const LfsAggregate &shocked,
                              IncomeSource source) {
    long double b = 0;
    long double s = 0;
    if (source == IncomeSource::wage) {
        for (const auto &[k, c] : base.wage) {
            b += c.income;
        }
        for (const auto &[k, c] : shocked.wage) {
            s += c.income;
        }
    } else if (source == IncomeSource::self_employment) {
        for (const auto &[k, c] : base.selfemp) {
            b += c.income;
        }
        for (const auto &[k, c] : shocked.selfemp) {
            s += c.income;
        }
    } else {
        throw ValidationError("observed change only exists for wage and self_employment");
    }
    b *= base.annualization();
    s *= shocked.annualization();
    if (b == 0) {
        throw ValidationError("observed_income_change: zero base total");
    }
    return static_cast<double>((s - b) / b);
}

std::vector<LfsAggregate> parse_lfs_aggregates(std::string_view text, std::string source_name) {
    const auto t = csv::Table::parse(text, std::move(source_name));
    const auto c_period = t.column("period");
    const auto c_q = t.column("quarters");
    const auto c_type = t.column("cell_type");
    const auto c_nace = t.column("nace");
    const auto c_sex = t.column("sex");
    const auto c_band = t.column("age_band");
    const auto c_income = t.column("income");
    const auto c_count = t.column("count");

    std::vector<LfsAggregate> out;
    for (std::size_t r = 0; r < t.rows(); ++r) {
        const auto &period = t.cell(r, c_period);
        auto it = std::find_if(out.begin(), out.end(),
                               [&](const LfsAggregate &a) { return a.period == period; });
        const auto quarters = t.integer(r, c_q);
        if (quarters < 1 || quarters > 4) {
            t.fail(r, c_q, "quarters must be in 1..4");
        }
        if (it == out.end()) {
            out.push_back(LfsAggregate{period, static_cast<int>(quarters), {}, {}});
            it = std::prev(out.end());
        } else if (it->quarters != quarters) {
            t.fail(r, c_q, "inconsistent quarters for period " + period);
        }
        CellAggregate cell{t.integer(r, c_income), t.integer(r, c_count)};
        if (cell.income < 0) {
            t.fail(r, c_income, "negative income");
        }
        if (cell.count < 0) {
            t.fail(r, c_count, "negative count");
        }
        const auto &type = t.cell(r, c_type);
        bool inserted = false;
        if (type == "wage") {
            WageCellKey key;
            key.nace2 = static_cast<int>(t.integer(r, c_nace));
            if (!nace::is_division(key.nace2)) {
                t.fail(r, c_nace, "not a NACE Rev.2 division");
            }
            try {
                key.sex = parse_sex(t.cell(r, c_sex));
            } catch (const ValidationError &e) {
                t.fail(r, c_sex, e.what());
            }
            try {
                key.age_band = parse_age_band(t.cell(r, c_band));
            } catch (const ValidationError &e) {
                t.fail(r, c_band, e.what());
            }
            inserted = it->wage.emplace(key, cell).second;
        } else if (type == "selfemp") {
            const auto &s = t.cell(r, c_nace);
            if (s.size() != 1 || !nace::section_index(s[0])) {
                t.fail(r, c_nace, "not a NACE Rev.2 section letter");
            }
            inserted = it->selfemp.emplace(SelfEmpCellKey{s[0]}, cell).second;
        } else {
            t.fail(r, c_type, "cell_type must be wage or selfemp");
        }
        if (!inserted) {
            t.fail(r, c_nace, "duplicate cell for period " + period);
        }
    }
    return out;
}

std::vector<LfsAggregate> load_lfs_aggregates(const std::filesystem::path &path) {
    return parse_lfs_aggregates(csv::read_text_file(path), path.string());
}

const LfsAggregate &find_period(const std::vector<LfsAggregate> &aggregates,
                                std::string_view period) {
    for (const auto &a : aggregates) {
        if (a.period == period) {
            return a;
        }
    }
    throw ValidationError("LFS period '" + std::string(period) + "' not found");
}

std::string lfs_to_csv(std::span<const LfsAggregate> aggregates) {
    csv::Writer w({"period", "quarters", "cell_type", "nace", "sex", "age_band", "income", "count"});
    for (const auto &a : aggregates) {
        for (const auto &[k, c] : a.wage) {
            w.row({a.period, std::to_string(a.quarters), "wage", std::to_string(k.nace2),
                   std::string(to_string(k.sex)), std::string(to_string(k.age_band)),
                   std::to_string(c.income), std::to_string(c.count)});
        }
        for (const auto &[k, c] : a.selfemp) {
            w.row({a.period, std::to_string(a.quarters), "selfemp", std::string(1, k.section), "", "",
                   std::to_string(c.income), std::to_string(c.count)});
        }
    }
    return w.str();
}

std::string cell_table_to_csv(const CellChangeTable &table) {
    csv::Writer w({"cell_type", "nace", "sex", "age_band", "factor", "provenance"});
    for (std::size_t i = 0; i < kWageCellCount; ++i) {
        const auto k = wage_cell_key(i);
        const auto &c = table.wage_cells()[i];
        w.row({"wage", std::to_string(k.nace2), std::string(to_string(k.sex)),
               std::string(to_string(k.age_band)), format_factor(c.factor),
               std::string(to_string(c.provenance))});
    }
    for (std::size_t i = 0; i < kSelfEmpCellCount; ++i) {
        const auto k = selfemp_cell_key(i);
        const auto &c = table.selfemp_cells()[i];
        w.row({"selfemp", std::string(1, k.section), "", "", format_factor(c.factor),
               std::string(to_string(c.provenance))});
    }
    return w.str();
}

} // namespace microsim
