#pragma once

#include "microsim/population.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace microsim {

/// persons.csv columns, in canonical order. Monthly incomes use one column
/// per source and month, e.g. wage_m01..wage_m12.
std::vector<std::string> persons_header();
/// households.csv columns, in canonical order.
std::vector<std::string> households_header();

/// Loads and validates a population. Columns may appear in any order;
/// errors name the file, row and column.
Population load_population(const std::filesystem::path &persons_file,
                           const std::filesystem::path &households_file, int base_year = 2019);

Population parse_population(std::string_view persons_csv, std::string_view households_csv,
                            int base_year = 2019);

std::string persons_to_csv(const Population &pop);
std::string households_to_csv(const Population &pop);

/// Writes persons.csv and households.csv into dir (created if missing).
void save_population(const Population &pop, const std::filesystem::path &dir);

} // namespace microsim
