#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace sipmink {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NumericalError : public Error {
public:
    using Error::Error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class UnsupportedError : public Error {
public:
    using Error::Error;
};

/// Sampled squares changed sign on a subspace that was supposed to be definite.
class ConstantSignError : public Error {
public:
    using Error::Error;
};

/// A linear functional that should be nonzero vanished on the whole basis.
class DegenerateError : public Error {
public:
    using Error::Error;
};

class TangentError : public Error {
public:
    using Error::Error;
};

class PathError : public Error {
public:
    using Error::Error;
};

class SingularMapError : public Error {
public:
    using Error::Error;
};

class UsageError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Minimizer ran out of iterations. Carries the best point seen so far.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, std::vector<double> best_point, double best_value)
        : Error(what), best_point_(std::move(best_point)), best_value_(best_value) {}

    const std::vector<double>& best_point() const noexcept { return best_point_; }
    double best_value() const noexcept { return best_value_; }

private:
    std::vector<double> best_point_;
    double best_value_;
};

/// Gram-Schmidt hit a (numerically) neutral pivot. `position` is 1-based,
/// matching the subscript of the input vector that produced it.
class NeutralPivotError : public Error {
public:
    explicit NeutralPivotError(std::size_t position)
        : Error("neutral pivot at vector " + std::to_string(position)), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

} // namespace sipmink
