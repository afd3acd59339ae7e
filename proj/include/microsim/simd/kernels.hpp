#pragma once

// Data-parallel inner loops with a scalar reference and an AVX2 variant.
// The active variant is picked once at runtime from CPUID; setting the
// environment variable MICROSIM_SIMD=scalar pins the reference path.
// Every variant must produce bit-identical results to the scalar one.

#include <cstdint>
#include <span>
#include <string_view>

namespace microsim::simd {

enum class Isa { scalar, avx2 };

std::string_view to_string(Isa isa) noexcept;

/// Best variant supported by this CPU and build.
Isa detected_isa() noexcept;
/// Variant currently used by the dispatching entry points.
Isa active_isa() noexcept;
/// Overrides the dispatch choice. Throws std::invalid_argument if the CPU or
/// build lacks the requested variant.
void force_isa(Isa isa);

/// out[i] = round-half-away-from-zero(in[i] * factor[i]), products formed in
/// IEEE double without contraction. Inputs should be integral with
/// magnitude below 2^52. All spans must have equal length; out may alias in.
void scale_round(std::span<const double> in, std::span<const double> factor,
                 std::span<double> out);

/// Sum of weight[i] over all i with value_num[i] * line_den < line_num * value_den[i].
/// Exact when every product is an integer below 2^53 in magnitude; callers
/// check that bound and fall back to integer arithmetic otherwise.
std::int64_t weighted_below(std::span<const double> value_num, std::span<const double> value_den,
                            std::span<const std::int64_t> weight, double line_num,
                            double line_den);

namespace scalar {
void scale_round(const double *in, const double *factor, double *out, std::size_t n) noexcept;
std::int64_t weighted_below(const double *value_num, const double *value_den,
                            const std::int64_t *weight, std::size_t n, double line_num,
                            double line_den) noexcept;
} // namespace scalar

#if defined(MICROSIM_HAVE_AVX2)
namespace avx2 {
void scale_round(const double *in, const double *factor, double *out, std::size_t n) noexcept;
std::int64_t weighted_below(const double *value_num, const double *value_den,
                            const std::int64_t *weight, std::size_t n, double line_num,
                            double line_den) noexcept;
} // namespace avx2
#endif

} // namespace microsim::simd
