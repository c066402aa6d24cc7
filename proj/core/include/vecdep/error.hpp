#pragma once

#include <stdexcept>
#include <string>

namespace vecdep {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on arguments or parameters was violated.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Input data is malformed or inconsistent with its configuration.
class DataError : public Error {
public:
    using Error::Error;
};

/// A statistic is undefined on the given data (zero variance, boundary
/// moments, non-monotone numerics, ...).
class DegenerateError : public Error {
public:
    using Error::Error;
};

}  // namespace vecdep
