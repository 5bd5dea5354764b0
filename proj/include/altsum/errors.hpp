#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace altsum {

/// Base class for every error the library raises deliberately.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A quotient source ran out of terms (or hit its index cap) before an exact
/// answer could be decided.  Nothing is ever rounded instead.
class InsufficientPrecision : public Error {
public:
    using Error::Error;
};

/// An exact three-way comparison could not be decided from the available
/// quotient prefix.
class ComparisonUndecidable : public InsufficientPrecision {
public:
    using InsufficientPrecision::InsufficientPrecision;
};

/// sqrt(D) was requested for a perfect-square D where an irrational was required.
class PerfectSquareInput : public Error {
public:
    using Error::Error;
};

/// The parity hypothesis (a_0 odd, a_i even for i >= 1) fails at `index`.
class HypothesisViolated : public Error {
public:
    HypothesisViolated(std::size_t index, const std::string& what)
        : Error(what), index_(index) {}
    std::size_t index() const { return index_; }

private:
    std::size_t index_;
};

/// alpha lies outside the domain an operation is defined for.
class AlphaOutOfRange : public Error {
public:
    using Error::Error;
};

/// A table / digit / record index outside the materialized or valid range.
class IndexOutOfRange : public Error {
public:
    using Error::Error;
};

/// Malformed textual input (alpha grammar, digit lists, fixture files).
class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace altsum
