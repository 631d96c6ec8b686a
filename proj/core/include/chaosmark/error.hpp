#pragma once

#include <stdexcept>
#include <string>

namespace chaosmark {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operands of inconsistent dimension (vectors, strategies, carriers).
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A strategy term or configured quantity leaves the admissible range [-N, N].
class BoundError : public Error {
public:
    using Error::Error;
};

/// An operation was called with arguments violating its precondition.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Malformed textual input (machine descriptions, vector files, messages).
class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace chaosmark
