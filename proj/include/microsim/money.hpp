#pragma once

#include <array>
#include <cmath>
#include <compare>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>

namespace microsim {

/// Macedonian denars, always whole units.
using Mkd = std::int64_t;

inline constexpr int kMonths = 12;

/// One calendar year of monthly amounts, January first.
using MonthlyAmounts = std::array<Mkd, kMonths>;

inline Mkd annual_total(const MonthlyAmounts &months) noexcept {
    return std::accumulate(months.begin(), months.end(), Mkd{0});
}

/// Half-away-from-zero rounding to whole denars.
inline Mkd round_mkd(double value) noexcept { return static_cast<Mkd>(std::llround(value)); }
inline Mkd round_mkd(long double value) noexcept { return static_cast<Mkd>(std::llroundl(value)); }

/// Integer division rounded half away from zero; den > 0.
constexpr Mkd div_round(Mkd num, Mkd den) noexcept {
    const Mkd q = num / den;
    const Mkd r = num % den;
    if (2 * (r < 0 ? -r : r) >= den) {
        return num < 0 ? q - 1 : q + 1;
    }
    return q;
}

/// Survey weight held as hundredths so sums stay exact.
class SurveyWeight {
  public:
    constexpr SurveyWeight() = default;
    static constexpr SurveyWeight from_hundredths(std::int64_t h) { return SurveyWeight{h}; }

    /// Parses "123", "123.4" or "123.45". Throws ValidationError otherwise.
    static SurveyWeight parse(std::string_view text);

    constexpr std::int64_t hundredths() const noexcept { return hundredths_; }
    double value() const noexcept { return static_cast<double>(hundredths_) / 100.0; }
    std::string to_string() const;

    auto operator<=>(const SurveyWeight &) const = default;

  private:
    constexpr explicit SurveyWeight(std::int64_t h) : hundredths_{h} {}
    std::int64_t hundredths_{0};
};

/// Exact non-negative rational with positive denominator, compared by
/// cross-multiplication.
struct Ratio {
    std::int64_t num{0};
    std::int64_t den{1};

    friend constexpr std::strong_ordering operator<=>(const Ratio &a, const Ratio &b) noexcept {
        const __int128 lhs = static_cast<__int128>(a.num) * b.den;
        const __int128 rhs = static_cast<__int128>(b.num) * a.den;
        return lhs <=> rhs;
    }
    friend constexpr bool operator==(const Ratio &a, const Ratio &b) noexcept {
        return (a <=> b) == std::strong_ordering::equal;
    }

    double to_double() const noexcept {
        return static_cast<double>(static_cast<long double>(num) / static_cast<long double>(den));
    }
};

/// Parses a decimal with at most `digits` fractional digits into an integer
/// scaled by 10^digits. Accepts plain JSON numbers.
std::int64_t to_fixed_point(double value, int digits, std::string_view what);

} // namespace microsim
