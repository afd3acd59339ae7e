#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace microsim::csv {

/// Header-indexed view of a comma-separated file. Fields may be quoted
/// (RFC 4180). Errors carry file, 1-based data row and column name.
class Table {
  public:
    static Table read(const std::filesystem::path &path);
    static Table parse(std::string_view text, std::string source_name);

    std::size_t rows() const noexcept { return rows_.size(); }
    const std::vector<std::string> &header() const noexcept { return header_; }

    /// Throws ValidationError when the column is absent.
    std::size_t column(std::string_view name) const;
    bool has_column(std::string_view name) const noexcept;

    const std::string &cell(std::size_t row, std::size_t col) const { return rows_[row][col]; }

    std::int64_t integer(std::size_t row, std::size_t col) const;
    std::optional<std::int64_t> optional_integer(std::size_t row, std::size_t col) const;
    bool boolean(std::size_t row, std::size_t col) const;

    /// Builds "file:row N:column C: message".
    std::string where(std::size_t row, std::size_t col, std::string_view message) const;
    [[noreturn]] void fail(std::size_t row, std::size_t col, std::string_view message) const;

  private:
    std::string source_;
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

/// Accumulates rows and renders canonical CSV (LF line endings, no quoting
/// unless a field contains a comma, quote or newline).
class Writer {
  public:
    explicit Writer(std::vector<std::string> header);

    Writer &row(std::vector<std::string> fields);
    std::string str() const { return out_; }
    void save(const std::filesystem::path &path) const;

  private:
    void append(const std::vector<std::string> &fields);
    std::size_t width_;
    std::string out_;
};

/// Fixed-precision decimal rendering independent of locale.
std::string fixed(double value, int precision);

void write_text_file(const std::filesystem::path &path, std::string_view text);
std::string read_text_file(const std::filesystem::path &path);

} // namespace microsim::csv
