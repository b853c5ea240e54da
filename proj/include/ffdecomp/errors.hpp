#pragma once

#include <stdexcept>
#include <string>

namespace ffd {

// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input or a violated precondition (non-prime p, constant f, eps out of range, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

// A configured size or degree limit would be exceeded.
class LimitExceeded : public Error {
public:
    using Error::Error;
};

// Division by zero, mixing elements of different fields.
class DomainError : public Error {
public:
    using Error::Error;
};

} // namespace ffd
