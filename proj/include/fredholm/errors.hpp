#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fredholm {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed expression or problem-file text. `offset` is the byte position
// within the source string the parser was looking at.
struct ParseError : Error {
    ParseError(std::string msg, std::size_t offset)
        : Error("parse error at offset " + std::to_string(offset) + ": " + std::move(msg)),
          offset(offset) {}
    std::size_t offset;
};

// Non-finite result during floating-point evaluation (log of a non-positive
// value, division by zero, overflow at a quadrature node, ...).
struct EvalError : Error {
    using Error::Error;
};

// Invalid user-supplied argument (CLI flag, quadrature order, basis degree).
struct ArgumentError : Error {
    using Error::Error;
};

// Arithmetic precondition violation, e.g. dividing a rational by zero.
struct DomainError : Error {
    using Error::Error;
};

// The linear system has no usable pivot.
struct SingularSystemError : Error {
    SingularSystemError(std::string msg, int pivot_index, double condition_estimate)
        : Error(std::move(msg)), pivot_index(pivot_index), condition_estimate(condition_estimate) {}
    int pivot_index;
    double condition_estimate;
};

// Problem-file structure violations: missing/duplicate keys, bad interval.
struct ProblemFileError : Error {
    using Error::Error;
};

// Cross-check or iteration failure that indicates a bug, not bad input.
struct InternalError : Error {
    using Error::Error;
};

// Filesystem failure; message carries the offending path.
struct IoError : Error {
    using Error::Error;
};

}  // namespace fredholm
