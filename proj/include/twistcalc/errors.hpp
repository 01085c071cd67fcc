#pragma once

#include <stdexcept>
#include <string>

namespace twistcalc {

/// Dimension or conductor/denominator disagreement between operands.
struct MismatchError : std::invalid_argument {
    explicit MismatchError(const std::string& what) : std::invalid_argument(what) {}
};

/// Division by zero, inverse of zero, sqrt of a non-square rank, and friends.
struct DomainError : std::domain_error {
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// An enumeration would exceed the configured budget.
struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// A data invariant does not hold on user-supplied input.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// A series is identically zero within its truncation window.
struct NoLeadingTerm : std::runtime_error {
    explicit NoLeadingTerm(const std::string& what) : std::runtime_error(what) {}
};

/// Structured-text input could not be parsed; message names the offending key.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace twistcalc
