#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace minnorm {

/// Solver configuration that cannot work, e.g. a sketch size outside (m, n).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Input dimensions are inconsistent with each other or with the problem class.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Numerical rank fell below what the algorithms assume (full rank).
class RankDeficiencyError : public std::runtime_error {
public:
    RankDeficiencyError(const std::string& what, std::size_t deficient_columns)
        : std::runtime_error(what), deficient_(deficient_columns) {}

    std::size_t deficient_columns() const { return deficient_; }

private:
    std::size_t deficient_;
};

/// File could not be read or parsed; line/column are 1-based, 0 when unknown.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
        : std::runtime_error(line == 0 ? what
                                       : what + " (line " + std::to_string(line) + ", column " +
                                             std::to_string(column) + ")"),
          line_(line),
          column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

} // namespace minnorm
