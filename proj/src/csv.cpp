#include "microsim/csv.hpp"

#include "microsim/error.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace microsim::csv {

namespace {

std::vector<std::vector<std::string>> split_records(std::string_view text,
                                                    const std::string &source) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool quoted = false;
    bool field_started = false;
    std::size_t line = 1;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                if (c == '\n') {
                    ++line;
                }
                field += c;
            }
            continue;
        }
        switch (c) {
        case '"':
            if (!field.empty()) {
                throw ValidationError(source + ":line " + std::to_string(line) +
                                      ": stray quote inside field");
            }
            quoted = true;
            field_started = true;
            break;
        case ',':
            record.push_back(std::move(field));
            field.clear();
            field_started = true;
            break;
        case '\r':
            break;
        case '\n':
            if (field_started || !field.empty() || !record.empty()) {
                record.push_back(std::move(field));
                records.push_back(std::move(record));
            }
            record.clear();
            field.clear();
            field_started = false;
            ++line;
            break;
        default:
            field += c;
            field_started = true;
        }
    }
    if (quoted) {
        throw ValidationError(source + ": unterminated quoted field");
    }
    if (field_started || !field.empty() || !record.empty()) {
        record.push_back(std::move(field));
        records.push_back(std::move(record));
    }
    return records;
}

} // namespace

Table Table::read(const std::filesystem::path &path) {
    return parse(read_text_file(path), path.string());
}

Table Table::parse(std::string_view text, std::string source_name) {
    if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") {
        text.remove_prefix(3);
    }
    Table t;
    t.source_ = std::move(source_name);
    auto records = split_records(text, t.source_);
    if (records.empty()) {
        throw ValidationError(t.source_ + ": missing header row");
    }
    t.header_ = std::move(records.front());
    for (std::size_t i = 1; i < records.size(); ++i) {
        if (records[i].size() != t.header_.size()) {
            throw ValidationError(t.source_ + ":row " + std::to_string(i) + ": expected " +
                                  std::to_string(t.header_.size()) + " fields, found " +
                                  std::to_string(records[i].size()));
        }
        t.rows_.push_back(std::move(records[i]));
    }
    return t;
}

bool Table::has_column(std::string_view name) const noexcept {
    for (const auto &h : header_) {
        if (h == name) {
            return true;
        }
    }
    return false;
}

std::size_t Table::column(std::string_view name) const {
    for (std::size_t i = 0; i < header_.size(); ++i) {
        if (header_[i] == name) {
            return i;
        }
    }
    throw ValidationError(source_ + ": missing column '" + std::string(name) + "'");
}

std::string Table::where(std::size_t row, std::size_t col, std::string_view message) const {
    return source_ + ":row " + std::to_string(row + 1) + ":column " + header_.at(col) + ": " +
           std::string(message);
}

void Table::fail(std::size_t row, std::size_t col, std::string_view message) const {
    throw ValidationError(where(row, col, message));
}

std::int64_t Table::integer(std::size_t row, std::size_t col) const {
    const auto &s = cell(row, col);
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || p != s.data() + s.size()) {
        fail(row, col, "expected integer, found '" + s + "'");
    }
    return v;
}

std::optional<std::int64_t> Table::optional_integer(std::size_t row, std::size_t col) const {
    if (cell(row, col).empty()) {
        return std::nullopt;
    }
    return integer(row, col);
}

bool Table::boolean(std::size_t row, std::size_t col) const {
    const auto &s = cell(row, col);
    if (s == "1") {
        return true;
    }
    if (s == "0") {
        return false;
    }
    fail(row, col, "expected 0 or 1, found '" + s + "'");
}

Writer::Writer(std::vector<std::string> header) : width_{header.size()} { append(header); }

Writer &Writer::row(std::vector<std::string> fields) {
    if (fields.size() != width_) {
        throw RuntimeError("csv writer: row width mismatch");
    }
    append(fields);
    return *this;
}

void Writer::append(const std::vector<std::string> &fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i > 0) {
            out_ += ',';
        }
        const auto &f = fields[i];
        if (f.find_first_of(",\"\n") != std::string::npos) {
            out_ += '"';
            for (char c : f) {
                if (c == '"') {
                    out_ += '"';
                }
                out_ += c;
            }
            out_ += '"';
        } else {
            out_ += f;
        }
    }
    out_ += '\n';
}

void Writer::save(const std::filesystem::path &path) const { write_text_file(path, out_); }

std::string fixed(double value, int precision) {
    if (value == 0.0) {
        value = 0.0; // normalise -0
    }
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, precision);
    if (ec != std::errc{}) {
        throw RuntimeError("number formatting failed");
    }
    std::string s(buf, p);
    if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) {
        s.erase(0, 1);
    }
    return s;
}

void write_text_file(const std::filesystem::path &path, std::string_view text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw RuntimeError("cannot open '" + path.string() + "' for writing");
    }
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) {
        throw RuntimeError("write to '" + path.string() + "' failed");
    }
}

std::string read_text_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ValidationError("cannot open '" + path.string() + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace microsim::csv
