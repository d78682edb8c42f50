#ifndef MAHLERKIT_ERRORS_HPP
#define MAHLERKIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mahlerkit {

// Raised when a computation cannot produce a trustworthy answer at the
// available truncation order / degree caps. Always retryable with larger caps.
class PrecisionError : public std::runtime_error {
public:
    explicit PrecisionError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a seed fails the linear constraints of an equation it is
// supposed to satisfy (or is too short to determine a solution).
class SeedError : public std::runtime_error {
public:
    explicit SeedError(const std::string& what) : std::runtime_error(what) {}
};

// Raised by the expression parser; carries a 1-based source position.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, int line, int column)
        : std::runtime_error(what + " (line " + std::to_string(line) + ", column " +
                             std::to_string(column) + ")"),
          line_(line), column_(column) {}
    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

// Raised by the numeric probe when an evaluation point is too close to a
// pole of a coefficient for the result to mean anything.
class PoleProximityError : public std::runtime_error {
public:
    explicit PoleProximityError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace mahlerkit

#endif // MAHLERKIT_ERRORS_HPP
