#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace burgers {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed expression or problem-file text. `position` is a byte offset
// into the offending string when known.
class SyntaxError : public Error {
public:
    SyntaxError(const std::string& what, std::size_t position)
        : Error(what), position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

// A primitive was evaluated outside its real domain: ln of a non-positive
// value, sqrt of a negative, Lambert W below -1/e, division by zero, or a
// negative base raised to a non-integer power.
class EvalDomainError : public Error {
public:
    using Error::Error;
};

// An expression referenced a name absent from the binding environment.
class UnboundNameError : public Error {
public:
    using Error::Error;
};

// Differentiation hit a primitive we do not differentiate (abs).
class DifferentiationError : public Error {
public:
    using Error::Error;
};

// An iterative scheme exhausted its budget; carries the partial estimate.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double partial)
        : Error(what), partial_(partial) {}
    double partial() const { return partial_; }

private:
    double partial_;
};

// Invalid construction data, e.g. f changes sign on the stated domain.
class ConstructionError : public Error {
public:
    using Error::Error;
};

// A query outside an attained range; carries that range.
class RangeError : public Error {
public:
    RangeError(const std::string& what, double lo, double hi)
        : Error(what), lo_(lo), hi_(hi) {}
    double lo() const { return lo_; }
    double hi() const { return hi_; }

private:
    double lo_, hi_;
};

// find_root was handed endpoints whose values have the same sign.
class BracketError : public Error {
public:
    using Error::Error;
};

}  // namespace burgers
