#include "urllc/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <system_error>

namespace urllc::csv {

std::string format_double(double value) {
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    std::array<char, 64> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc{}) {
        return "nan";
    }
    return std::string(buf.data(), end);
}

Cell::Cell(std::string_view v) {
    if (v.find_first_of(",\"\n") == std::string_view::npos) {
        text_ = std::string(v);
        return;
    }
    text_.reserve(v.size() + 2);
    text_.push_back('"');
    for (const char c : v) {
        if (c == '"') {
            text_.push_back('"');
        }
        text_.push_back(c);
    }
    text_.push_back('"');
}

void Writer::header(std::initializer_list<std::string_view> columns) {
    bool first = true;
    for (const auto c : columns) {
        if (!first) {
            out_ << ',';
        }
        out_ << c;
        first = false;
    }
    out_ << '\n';
}

void Writer::row(std::initializer_list<Cell> cells) {
    bool first = true;
    for (const auto& c : cells) {
        if (!first) {
            out_ << ',';
        }
        out_ << c.text();
        first = false;
    }
    out_ << '\n';
}

void Writer::row(const std::vector<Cell>& cells) {
    bool first = true;
    for (const auto& c : cells) {
        if (!first) {
            out_ << ',';
        }
        out_ << c.text();
        first = false;
    }
    out_ << '\n';
}

void Writer::comment(std::string_view text) { out_ << "# " << text << '\n'; }

std::vector<std::string> split_line(std::string_view line) {
    if (!line.empty() && line.back() == '\r') {
        line.remove_suffix(1);
    }
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(',', start);
        if (pos == std::string_view::npos) {
            out.emplace_back(line.substr(start));
            break;
        }
        out.emplace_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

void write_atomically(const std::filesystem::path& path, std::string_view contents) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::system_error(errno, std::generic_category(),
                                    "cannot open " + tmp.string());
        }
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        if (!out) {
            throw std::system_error(errno, std::generic_category(),
                                    "cannot write " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace urllc::csv
