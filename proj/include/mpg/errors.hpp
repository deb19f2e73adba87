#pragma once

#include <stdexcept>
#include <string>

namespace mpg {

// Base class for every error thrown by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class DivisionByZero : public Error {
public:
    DivisionByZero() : Error("division by zero") {}
};

class SingularMatrix : public Error {
public:
    SingularMatrix() : Error("singular matrix") {}
};

// Malformed input text. `where` is a byte offset or a path into the document.
class ParseError : public Error {
public:
    ParseError(std::string where, std::string reason)
        : Error("parse error at " + where + ": " + reason),
          where_(std::move(where)), reason_(std::move(reason)) {}

    const std::string& where() const { return where_; }
    const std::string& reason() const { return reason_; }

private:
    std::string where_;
    std::string reason_;
};

// Structurally well-formed input that violates a model invariant
// (non-stochastic row, empty action set, ...).
class InvariantViolation : public Error {
public:
    explicit InvariantViolation(const std::string& what) : Error(what) {}
};

// An enumeration-based operation would exceed its configured work cap.
class EnumerationTooLarge : public Error {
public:
    explicit EnumerationTooLarge(const std::string& what) : Error(what) {}
};

// An exact-arithmetic self-check failed. Callers must treat this as a defect
// and abort (exit code 4), never as a recoverable condition.
class InternalError : public Error {
public:
    explicit InternalError(const std::string& what) : Error("internal invariant violation: " + what) {}
};

}  // namespace mpg
