#include "microsim/money.hpp"

#include "microsim/error.hpp"

#include <charconv>

namespace microsim {

SurveyWeight SurveyWeight::parse(std::string_view text) {
    const auto fail = [&] {
        return ValidationError("malformed survey weight '" + std::string(text) + "'");
    };
    if (text.empty()) {
        throw fail();
    }
    const auto dot = text.find('.');
    const auto int_part = text.substr(0, dot);
    std::string_view frac_part = dot == std::string_view::npos ? "" : text.substr(dot + 1);
    if (int_part.empty() || frac_part.size() > 2 ||
        (dot != std::string_view::npos && frac_part.empty())) {
        throw fail();
    }
    std::int64_t whole = 0;
    auto [p, ec] = std::from_chars(int_part.data(), int_part.data() + int_part.size(), whole);
    if (ec != std::errc{} || p != int_part.data() + int_part.size() || int_part.front() == '-' ||
        int_part.front() == '+') {
        throw fail();
    }
    std::int64_t frac = 0;
    for (char c : frac_part) {
        if (c < '0' || c > '9') {
            throw fail();
        }
    }
    if (!frac_part.empty()) {
        std::from_chars(frac_part.data(), frac_part.data() + frac_part.size(), frac);
        if (frac_part.size() == 1) {
            frac *= 10;
        }
    }
    return SurveyWeight{whole * 100 + frac};
}

std::string SurveyWeight::to_string() const {
    const auto whole = hundredths_ / 100;
    const auto frac = hundredths_ % 100;
    std::string out = std::to_string(whole) + ".";
    if (frac < 10) {
        out += '0';
    }
    out += std::to_string(frac);
    return out;
}

std::int64_t to_fixed_point(double value, int digits, std::string_view what) {
    double scale = 1.0;
    for (int i = 0; i < digits; ++i) {
        scale *= 10.0;
    }
    const double scaled = value * scale;
    const double rounded = std::round(scaled);
    if (!std::isfinite(value) || std::abs(scaled - rounded) > 1e-6) {
        throw ValidationError(std::string(what) + " must have at most " + std::to_string(digits) +
                              " decimal digits");
    }
    return static_cast<std::int64_t>(rounded);
}

} // namespace microsim
