#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "copos/rational.hpp"

namespace copos {

/** Base of every error raised by the library. */
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& message, int line, int column)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
          line_(line),
          column_(column) {}

    [[nodiscard]] int line() const { return line_; }
    [[nodiscard]] int column() const { return column_; }

private:
    int line_;
    int column_;
};

class AsymmetryError : public Error {
public:
    AsymmetryError(int row, int col)
        : Error("entries (" + std::to_string(row) + "," + std::to_string(col) + ") and (" + std::to_string(col) + "," +
                std::to_string(row) + ") differ"),
          row_(row),
          col_(col) {}

    [[nodiscard]] int row() const { return row_; }
    [[nodiscard]] int col() const { return col_; }

private:
    int row_;
    int col_;
};

/// Input outside the domain of a generator (e.g. T-matrix angles summing to pi or more).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Matrix entries outside the range required by the angle parametrization.
class OutOfRange : public Error {
public:
    using Error::Error;
};

class GuardExceeded : public Error {
public:
    using Error::Error;
};

class PreconditionViolation : public Error {
public:
    using Error::Error;
};

/**
 * A nonnegative vector x with x^T A x < 0 was found while analysing A, so A is
 * not copositive. The witness is given in full coordinates.
 */
class NotCopositiveEvidence : public Error {
public:
    NotCopositiveEvidence(std::vector<Rational> witness, Rational value)
        : Error("matrix is not copositive: found x >= 0 with x^T A x = " + value.to_string()),
          witness_(std::move(witness)),
          value_(std::move(value)) {}

    [[nodiscard]] const std::vector<Rational>& witness() const { return witness_; }
    [[nodiscard]] const Rational& value() const { return value_; }

private:
    std::vector<Rational> witness_;
    Rational value_;
};

class NotAZero : public Error {
public:
    using Error::Error;
};

class NoMinimalZeroInside : public Error {
public:
    using Error::Error;
};

}  // namespace copos
