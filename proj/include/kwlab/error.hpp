#pragma once

#include <stdexcept>
#include <string>

namespace kwlab {

/// Base of all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input outside an operation's domain (y <= 0, zero axis, bad parameters).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A computation produced a non-finite value, diverged, or failed to close.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// Integration left the finite region; `where` is the abscissa of detection.
class BlowUpError : public NumericalError {
public:
    BlowUpError(const std::string& what, long double where) : NumericalError(what), where_(where) {}
    long double where() const { return where_; }

private:
    long double where_;
};

class UsageError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace kwlab
