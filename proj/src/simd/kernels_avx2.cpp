// Compiled with -mavx2 only; reached through the runtime dispatcher.
#include "microsim/simd/kernels.hpp"

#include <immintrin.h>

namespace microsim::simd::avx2 {

namespace {

inline std::int64_t reduce_add_i64x4(__m256i x) noexcept {
    const __m128i lo = _mm256_castsi256_si128(x);
    const __m128i hi = _mm256_extracti128_si256(x, 1);
    const __m128i s = _mm_add_epi64(lo, hi);
    return _mm_cvtsi128_si64(s) + _mm_extract_epi64(s, 1);
}

// Half-away-from-zero rounding, bit-identical to std::round: the fractional
// part v - trunc(v) is exact for every finite double.
inline __m256d round_half_away(__m256d v) noexcept {
    const __m256d sign_mask = _mm256_set1_pd(-0.0);
    const __m256d t = _mm256_round_pd(v, _MM_FROUND_TO_ZERO | _MM_FROUND_NO_EXC);
    const __m256d frac = _mm256_andnot_pd(sign_mask, _mm256_sub_pd(v, t));
    const __m256d bump = _mm256_cmp_pd(frac, _mm256_set1_pd(0.5), _CMP_GE_OQ);
    const __m256d one = _mm256_or_pd(_mm256_and_pd(v, sign_mask), _mm256_set1_pd(1.0));
    const __m256d r = _mm256_add_pd(t, _mm256_and_pd(bump, one));
    // keep the sign of zero results consistent with std::round
    return _mm256_or_pd(r, _mm256_and_pd(v, sign_mask));
}

} // namespace

void scale_round(const double *in, const double *factor, double *out, std::size_t n) noexcept {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v = _mm256_mul_pd(_mm256_loadu_pd(in + i), _mm256_loadu_pd(factor + i));
        _mm256_storeu_pd(out + i, round_half_away(v));
    }
    scalar::scale_round(in + i, factor + i, out + i, n - i);
}

std::int64_t weighted_below(const double *value_num, const double *value_den,
                            const std::int64_t *weight, std::size_t n, double line_num,
                            double line_den) noexcept {
    const __m256d ln = _mm256_set1_pd(line_num);
    const __m256d ld = _mm256_set1_pd(line_den);
    __m256i acc = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d lhs = _mm256_mul_pd(_mm256_loadu_pd(value_num + i), ld);
        const __m256d rhs = _mm256_mul_pd(ln, _mm256_loadu_pd(value_den + i));
        const __m256i below = _mm256_castpd_si256(_mm256_cmp_pd(lhs, rhs, _CMP_LT_OQ));
        const __m256i w = _mm256_loadu_si256(reinterpret_cast<const __m256i *>(weight + i));
        acc = _mm256_add_epi64(acc, _mm256_and_si256(below, w));
    }
    return reduce_add_i64x4(acc) +
           scalar::weighted_below(value_num + i, value_den + i, weight + i, n - i, line_num,
                                  line_den);
}

} // namespace microsim::simd::avx2
