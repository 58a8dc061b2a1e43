#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hauslab {

/// Precondition on an argument was violated (bad index, eps <= 0, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Two sets (or a point and a set) live in different ambient spaces.
class AmbientMismatch : public DomainError {
public:
    AmbientMismatch() : DomainError("operands belong to different ambient spaces") {}
    using DomainError::DomainError;
};

/// A distance table fails a metric axiom.
class MetricViolation : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// K_{n+1} is not a subset of K_n. `index()` is the first bad n (1-based).
class NestingError : public std::runtime_error {
public:
    NestingError(std::size_t index, const std::string& what)
        : std::runtime_error(what), index_(index) {}
    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

/// Malformed input file. `where()` names the offending field or line.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string where, const std::string& what)
        : std::runtime_error(where + ": " + what), where_(std::move(where)) {}
    const std::string& where() const noexcept { return where_; }

private:
    std::string where_;
};

}  // namespace hauslab
