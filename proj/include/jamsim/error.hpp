#pragma once

#include <stdexcept>
#include <string>

namespace jamsim {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Shape or symmetry mismatch (non-square, non-Hermitian, length mismatch).
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Iterative method exceeded its iteration cap.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// Matrix singular or indefinite beyond the accepted tolerance.
class ConditioningError : public Error {
public:
    using Error::Error;
};

/// Invalid argument or configuration value.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Rank-deficient regression design matrix.
class CollinearityError : public Error {
public:
    using Error::Error;
};

/// Not enough history to run a prediction.
class ColdStartError : public Error {
public:
    using Error::Error;
};

/// Filesystem failure, message carries the offending path.
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace jamsim
