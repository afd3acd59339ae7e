#include "microsim/nace.hpp"

#include <algorithm>

namespace microsim::nace {

namespace {

struct SectionRange {
    char section;
    int first;
    int last;
};

// Division ranges per section; gaps (4, 34, 40, 44, 48, 54, 57, 67, 76, 83,
// 89) are unassigned in NACE Rev.2.
constexpr std::array<SectionRange, kSectionCount> kRanges{{
    {'A', 1, 3},   {'B', 5, 9},   {'C', 10, 33}, {'D', 35, 35}, {'E', 36, 39}, {'F', 41, 43},
    {'G', 45, 47}, {'H', 49, 53}, {'I', 55, 56}, {'J', 58, 63}, {'K', 64, 66}, {'L', 68, 68},
    {'M', 69, 75}, {'N', 77, 82}, {'O', 84, 84}, {'P', 85, 85}, {'Q', 86, 88}, {'R', 90, 93},
    {'S', 94, 96}, {'T', 97, 98}, {'U', 99, 99},
}};

constexpr std::array<int, kDivisionCount> make_divisions() {
    std::array<int, kDivisionCount> out{};
    std::size_t i = 0;
    out[i++] = 0;
    for (const auto &r : kRanges) {
        for (int d = r.first; d <= r.last; ++d) {
            out[i++] = d;
        }
    }
    return out;
}

constexpr auto kDivisions = make_divisions();
static_assert(kDivisions.back() == 99);

constexpr std::array<char, kSectionCount> make_sections() {
    std::array<char, kSectionCount> out{};
    for (std::size_t i = 0; i < kSectionCount; ++i) {
        out[i] = kRanges[i].section;
    }
    return out;
}

constexpr auto kSections = make_sections();

} // namespace

const std::array<int, kDivisionCount> &divisions() { return kDivisions; }
const std::array<char, kSectionCount> &sections() { return kSections; }

std::optional<std::size_t> division_index(int code) noexcept {
    auto it = std::lower_bound(kDivisions.begin(), kDivisions.end(), code);
    if (it == kDivisions.end() || *it != code) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - kDivisions.begin());
}

bool is_division(int code) noexcept { return division_index(code).has_value(); }

std::optional<char> section_of(int division) noexcept {
    for (const auto &r : kRanges) {
        if (division >= r.first && division <= r.last) {
            return r.section;
        }
    }
    return std::nullopt;
}

std::optional<std::size_t> section_index(char section) noexcept {
    if (section < 'A' || section > 'U') {
        return std::nullopt;
    }
    return static_cast<std::size_t>(section - 'A');
}

} // namespace microsim::nace
