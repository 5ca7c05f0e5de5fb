#pragma once

#include <stdexcept>
#include <string>

namespace mstfolio {

/// Base class for every failure raised by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Input that could not be read at all; carries the offending line number.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Input that parsed but violates a documented data constraint.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// API misuse: a stated precondition of the operation does not hold.
class ContractError : public Error {
public:
    using Error::Error;
};

/// Data on which the requested quantity is mathematically undefined
/// (zero variance, divergent estimate, contradictory classification, ...).
class DegenerateError : public Error {
public:
    using Error::Error;
};

/// Not enough data to satisfy the request (empty universe, empty schedule,
/// infeasible selection, empty group, ...).
class InsufficientDataError : public Error {
public:
    using Error::Error;
};

} // namespace mstfolio
