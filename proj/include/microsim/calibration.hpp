#pragma once

#include "microsim/policy.hpp"
#include "microsim/population.hpp"
#include "microsim/poverty.hpp"

namespace microsim {

struct CalibrationOptions {
    int max_iterations{40};
    /// Accepted distance to the target, as a fraction (0.005 = 0.5pp).
    double tolerance{0.005};
    /// Search interval of the dispersion exponent.
    double gamma_min{0.05};
    double gamma_max{4.0};
    EquivalenceScale scale;
    unsigned threads{1};
};

struct CalibrationResult {
    Population population;
    double gamma{1.0};
    double achieved_rate{0.0};
    int iterations{0};
};

/// Rewrites every positive wage and self-employment amount x as
/// max(1, round(m * (x / m)^gamma)), m being the weighted median of the
/// positive monthly amounts of that source. gamma = 1 is the identity.
Population rescale_market_income(const Population &pop, double gamma);

/// Bisects gamma until the baseline relative child poverty rate is within
/// tolerance of target. Returns the input unchanged when it already is.
/// Throws ValidationError for a target outside (0, 1) or an empty
/// population, and RuntimeError (carrying the best rate reached) when no
/// gamma in the interval attains the target.
CalibrationResult calibrate_to_baseline(const Population &pop, double target,
                                        const PolicyParameters &params,
                                        const CalibrationOptions &options = {});

} // namespace microsim
