#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace urllc {

/// Invalid arguments or call sequence: empty inputs, k > frame length, bad sizes.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Argument outside the mathematical domain of a function (e.g. non-positive SNR).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A frame plan could not be built (infeasible reliability split, pointer width diverged).
class PlanningError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed trace file. Carries the 1-based line number of the offending row.
class LoadError : public std::runtime_error {
public:
    LoadError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace urllc
