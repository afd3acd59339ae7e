#include "microsim/simd/kernels.hpp"

#include <cmath>

namespace microsim::simd::scalar {

void scale_round(const double *in, const double *factor, double *out, std::size_t n) noexcept {
    for (std::size_t i = 0; i < n; ++i) {
        const double v = in[i] * factor[i];
        out[i] = std::round(v);
    }
}

std::int64_t weighted_below(const double *value_num, const double *value_den,
                            const std::int64_t *weight, std::size_t n, double line_num,
                            double line_den) noexcept {
    std::int64_t total = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double lhs = value_num[i] * line_den;
        const double rhs = line_num * value_den[i];
        if (lhs < rhs) {
            total += weight[i];
        }
    }
    return total;
}

} // namespace microsim::simd::scalar
