#pragma once

#include <stdexcept>
#include <string>

namespace discpack {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

class NotSquarefree : public Error {
public:
    using Error::Error;
};

class NoConvergence : public Error {
public:
    using Error::Error;
};

class SingularJacobian : public Error {
public:
    using Error::Error;
};

/// A geometric construction (stick, flow evaluation) has no solution.
class NoSolution : public Error {
public:
    using Error::Error;
};

/// A built periodic domain has overlapping discs.
class InvalidPacking : public Error {
public:
    using Error::Error;
};

class InitialBoundsInvalid : public Error {
public:
    using Error::Error;
};

/// Malformed input document (recipe, CSV, JSON).
class FormatError : public Error {
public:
    using Error::Error;
};

}  // namespace discpack
