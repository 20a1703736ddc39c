#pragma once

#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace urllc::csv {

/// Shortest round-trip decimal form of `value` ("inf"/"nan" for non-finite values).
std::string format_double(double value);

/// A single CSV cell. Numbers are rendered deterministically, strings are quoted when needed.
class Cell {
public:
    Cell(double v) : text_(format_double(v)) {}
    Cell(std::uint64_t v) : text_(std::to_string(v)) {}
    Cell(std::int64_t v) : text_(std::to_string(v)) {}
    Cell(unsigned v) : text_(std::to_string(v)) {}
    Cell(int v) : text_(std::to_string(v)) {}
    Cell(bool v) : text_(v ? "1" : "0") {}
    Cell(std::string_view v);
    Cell(const char* v) : Cell(std::string_view(v)) {}
    Cell(const std::string& v) : Cell(std::string_view(v)) {}
    template <class T>
    Cell(const std::optional<T>& v) : text_(v ? Cell(*v).text() : std::string()) {}

    const std::string& text() const noexcept { return text_; }

private:
    std::string text_;
};

/// Row-oriented writer; rows are '\n' terminated regardless of platform.
class Writer {
public:
    explicit Writer(std::ostream& out) : out_(out) {}

    void header(std::initializer_list<std::string_view> columns);
    void row(std::initializer_list<Cell> cells);
    void row(const std::vector<Cell>& cells);
    void comment(std::string_view text);

private:
    std::ostream& out_;
};

/// Splits one CSV line on commas. Quoted fields are not supported by readers in this project.
std::vector<std::string> split_line(std::string_view line);

/// Writes `contents` to `path` via a temporary sibling file and rename.
void write_atomically(const std::filesystem::path& path, std::string_view contents);

}  // namespace urllc::csv
