#pragma once

#include <stdexcept>
#include <string>

namespace hyten {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input text (bad token, empty file, ...). Carries a line number when known.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& what, int line = 0)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

/// A capacity guard tripped (explicit tensor too large, blowup enumeration too big).
class CapacityError : public Error {
public:
    using Error::Error;
};

/// Floating-point range violation: coefficients would underflow or overflow.
class NumericError : public Error {
public:
    using Error::Error;
};

/// An operation's precondition does not hold (disconnected input, zero degree, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// An iterative method exhausted its iteration budget.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// Cooperative cancellation observed (benchmark watchdog).
class Cancelled : public Error {
public:
    Cancelled() : Error("operation cancelled") {}
};

}  // namespace hyten
