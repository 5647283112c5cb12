#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace astaxon {

// Bad flags, impossible sizes, missing inputs. CLI exit code 1.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Unusable data: empty datasets, contradictory annotations. CLI exit code 2.
struct DataError : std::runtime_error {
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed file content; carries the 1-based line number.
struct ParseError : DataError {
    ParseError(const std::string& msg, std::size_t line_no)
        : DataError(msg + " (line " + std::to_string(line_no) + ")"), line(line_no) {}

    std::size_t line;
};

} // namespace astaxon
