#include "microsim/calibration.hpp"

#include "microsim/error.hpp"
#include "microsim/scenario.hpp"

#include <cmath>
#include <sstream>

namespace microsim {

namespace {

constexpr std::array<IncomeSource, 2> kMarketSources{IncomeSource::wage,
                                                     IncomeSource::self_employment};

std::optional<Mkd> positive_median(const Population &pop, IncomeSource source) {
    std::vector<Weighted<std::int64_t>> items;
    for (std::size_t h = 0; h < pop.household_count(); ++h) {
        const auto w = pop.households()[h].survey_weight.hundredths();
        for (const auto &p : pop.members(h)) {
            for (Mkd v : p.stream(source)) {
                if (v > 0) {
                    items.push_back({v, w});
                }
            }
        }
    }
    if (items.empty()) {
        return std::nullopt;
    }
    return weighted_median(std::move(items));
}

bool has_dispersion(const Population &pop) {
    std::optional<Mkd> seen;
    for (const auto &p : pop.persons()) {
        for (auto s : kMarketSources) {
            for (Mkd v : p.stream(s)) {
                if (v > 0) {
                    if (seen && *seen != v) {
                        return true;
                    }
                    seen = v;
                }
            }
        }
    }
    return false;
}

} // namespace

Population rescale_market_income(const Population &pop, double gamma) {
    if (!(gamma > 0.0) || !std::isfinite(gamma)) {
        throw ValidationError("rescale exponent must be > 0");
    }
    if (gamma == 1.0) {
        return pop;
    }
    std::array<std::optional<Mkd>, 2> medians{positive_median(pop, kMarketSources[0]),
                                              positive_median(pop, kMarketSources[1])};
    return pop.with_persons([&](Person &p) {
        for (std::size_t i = 0; i < kMarketSources.size(); ++i) {
            if (!medians[i]) {
                continue;
            }
            const double m = static_cast<double>(*medians[i]);
            for (Mkd &v : p.stream(kMarketSources[i])) {
                if (v > 0) {
                    v = std::max<Mkd>(1, round_mkd(m * std::pow(static_cast<double>(v) / m, gamma)));
                }
            }
        }
    });
}

CalibrationResult calibrate_to_baseline(const Population &pop, double target,
                                        const PolicyParameters &params,
                                        const CalibrationOptions &options) {
    if (!(target > 0.0 && target < 1.0)) {
        throw ValidationError("calibration target must be in (0, 1)");
    }
    if (pop.empty()) {
        throw ValidationError("calibration needs a non-empty population");
    }
    if (!(options.gamma_min > 0.0 && options.gamma_min < 1.0 && options.gamma_max > 1.0) ||
        options.max_iterations < 1 || !(options.tolerance > 0.0)) {
        throw ValidationError("calibration options out of range");
    }
    const auto rate_at = [&](double gamma) {
        return baseline_child_poverty(rescale_market_income(pop, gamma), params, options.scale,
                                      options.threads);
    };
    CalibrationResult best{pop, 1.0, rate_at(1.0), 0};
    const auto close = [&](double r) { return std::abs(r - target) <= options.tolerance; };
    if (close(best.achieved_rate)) {
        return best;
    }
    const auto fail = [&](const char *why) {
        std::ostringstream msg;
        msg << "calibration failed (" << why << "); best relative child poverty "
            << best.achieved_rate << " at gamma " << best.gamma << ", target " << target;
        return RuntimeError(msg.str());
    };
    if (!has_dispersion(pop)) {
        throw fail("market incomes have no dispersion to rescale");
    }
    const auto consider = [&](double gamma, double rate, int iteration) {
        if (std::abs(rate - target) < std::abs(best.achieved_rate - target)) {
            best = CalibrationResult{Population{}, gamma, rate, iteration};
        }
    };
    // The rate grows with gamma; bracket the target on the side it lies.
    const bool start_below = best.achieved_rate < target;
    double lo = start_below ? 1.0 : options.gamma_min;
    double hi = start_below ? options.gamma_max : 1.0;
    const double edge_gamma = start_below ? hi : lo;
    const double edge_rate = rate_at(edge_gamma);
    consider(edge_gamma, edge_rate, 1);
    if (start_below == (edge_rate < target) && !close(edge_rate)) {
        throw fail("target outside the reachable range");
    }
    for (int it = 2; it <= options.max_iterations && !close(best.achieved_rate); ++it) {
        const double mid = 0.5 * (lo + hi);
        const double r = rate_at(mid);
        consider(mid, r, it);
        (r < target ? lo : hi) = mid;
    }
    if (!close(best.achieved_rate)) {
        throw fail("iteration limit reached");
    }
    best.population = rescale_market_income(pop, best.gamma);
    return best;
}

} // namespace microsim
