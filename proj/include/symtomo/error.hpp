#pragma once

#include <stdexcept>
#include <string>

namespace symtomo {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid grid / job configuration (non power-of-two sizes, hbar <= 0, ...).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Symplectic matrix whose upper-right block is singular.
class NotFreeError : public Error {
public:
    using Error::Error;
};

/// Valid request that this implementation does not cover (n > 1, nu = 0 on the chirp route).
class UnsupportedError : public Error {
public:
    using Error::Error;
};

/// Input data inconsistent with the pure-Gaussian model.
class ModelMismatch : public Error {
public:
    using Error::Error;
};

/// Both covariance signs explain the data equally well.
class AmbiguousError : public Error {
public:
    using Error::Error;
};

/// Malformed file or manifest.
class FormatError : public Error {
public:
    using Error::Error;
};

/// Internal consistency violated (should be impossible for valid inputs).
class InternalError : public Error {
public:
    using Error::Error;
};

}  // namespace symtomo
