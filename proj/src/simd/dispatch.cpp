#include "microsim/simd/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace microsim::simd {

namespace {

bool cpu_has_avx2() noexcept {
#if defined(MICROSIM_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

Isa initial_isa() noexcept {
    if (const char *env = std::getenv("MICROSIM_SIMD"); env && std::string(env) == "scalar") {
        return Isa::scalar;
    }
    return detected_isa();
}

std::atomic<Isa> &active() noexcept {
    static std::atomic<Isa> isa{initial_isa()};
    return isa;
}

void require_equal(std::size_t a, std::size_t b) {
    if (a != b) {
        throw std::invalid_argument("simd kernel: span length mismatch");
    }
}

} // namespace

std::string_view to_string(Isa isa) noexcept { return isa == Isa::avx2 ? "avx2" : "scalar"; }

Isa detected_isa() noexcept { return cpu_has_avx2() ? Isa::avx2 : Isa::scalar; }

Isa active_isa() noexcept { return active().load(std::memory_order_relaxed); }

void force_isa(Isa isa) {
    if (isa == Isa::avx2 && !cpu_has_avx2()) {
        throw std::invalid_argument("AVX2 kernels are not available on this CPU/build");
    }
    active().store(isa, std::memory_order_relaxed);
}

void scale_round(std::span<const double> in, std::span<const double> factor,
                 std::span<double> out) {
    require_equal(in.size(), factor.size());
    require_equal(in.size(), out.size());
#if defined(MICROSIM_HAVE_AVX2)
    if (active_isa() == Isa::avx2) {
        avx2::scale_round(in.data(), factor.data(), out.data(), in.size());
        return;
    }
#endif
    scalar::scale_round(in.data(), factor.data(), out.data(), in.size());
}

std::int64_t weighted_below(std::span<const double> value_num, std::span<const double> value_den,
                            std::span<const std::int64_t> weight, double line_num,
                            double line_den) {
    require_equal(value_num.size(), value_den.size());
    require_equal(value_num.size(), weight.size());
#if defined(MICROSIM_HAVE_AVX2)
    if (active_isa() == Isa::avx2) {
        return avx2::weighted_below(value_num.data(), value_den.data(), weight.data(),
                                    value_num.size(), line_num, line_den);
    }
#endif
    return scalar::weighted_below(value_num.data(), value_den.data(), weight.data(),
                                  value_num.size(), line_num, line_den);
}

} // namespace microsim::simd
