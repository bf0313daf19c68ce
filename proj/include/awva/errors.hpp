#pragma once

#include <stdexcept>
#include <string>

namespace awva {

/// Invalid or inconsistent configuration values.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Two traces that must share a sampling grid do not.
class GridMismatchError : public std::runtime_error {
public:
    explicit GridMismatchError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Curve alignment failed (flat or degenerate traces).
class CalibrationError : public std::runtime_error {
public:
    explicit CalibrationError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed input file; carries the 1-based line number when known.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t line = 0)
        : std::runtime_error(line ? msg + " (line " + std::to_string(line) + ")" : msg),
          line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Filesystem-level failure; message includes the path.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace awva
