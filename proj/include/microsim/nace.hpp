#pragma once

#include <array>
#include <optional>

namespace microsim::nace {

/// The 88 NACE Rev.2 divisions plus 0 ("activity not stated"), ascending.
inline constexpr std::size_t kDivisionCount = 89;
/// Sections A..U.
inline constexpr std::size_t kSectionCount = 21;

const std::array<int, kDivisionCount> &divisions();
const std::array<char, kSectionCount> &sections();

bool is_division(int code) noexcept;
/// Position of code in divisions(); nullopt for unknown codes.
std::optional<std::size_t> division_index(int code) noexcept;

/// Section letter of a division; nullopt for 0 and unknown codes.
std::optional<char> section_of(int division) noexcept;
std::optional<std::size_t> section_index(char section) noexcept;

} // namespace microsim::nace
