#pragma once

#include <stdexcept>
#include <string>

namespace ttpred {

// Malformed input text (bad JSON, missing required keys).
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// Structurally well-formed data that violates a type invariant.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Arguments outside an operation's domain (bad dimensions, out-of-range values).
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// Training data that cannot produce a meaningful fit (e.g. single-class labels).
class DegenerateFitError : public std::runtime_error {
public:
    explicit DegenerateFitError(const std::string& msg) : std::runtime_error(msg) {}
};

// Optimizer hit its iteration cap before reaching tolerance.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& msg, double residual)
        : std::runtime_error(msg), residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_;
};

// A player has no other matches to aggregate over.
class InsufficientHistoryError : public std::runtime_error {
public:
    explicit InsufficientHistoryError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace ttpred
