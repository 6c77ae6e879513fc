#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace blocktrans {

/// Base class for every error raised by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// -- field and matrix errors --------------------------------------------

class NotPrimeError : public Error {
public:
    using Error::Error;
};

class OutOfRangeError : public Error {
public:
    using Error::Error;
};

class FieldMismatchError : public Error {
public:
    using Error::Error;
};

class DivisionByZeroError : public Error {
public:
    using Error::Error;
};

class IndexOutOfRangeError : public Error {
public:
    using Error::Error;
};

class NotSquareError : public Error {
public:
    using Error::Error;
};

// -- matroid errors -----------------------------------------------------

class GroundTooLargeError : public Error {
public:
    using Error::Error;
};

class ElementNotInGroundError : public Error {
public:
    using Error::Error;
};

class FamiliesNotDisjointError : public Error {
public:
    using Error::Error;
};

class TooManyFamiliesError : public Error {
public:
    using Error::Error;
};

// -- block instance errors ----------------------------------------------

class QuotaMismatchError : public Error {
public:
    using Error::Error;
};

class TooManyBlocksError : public Error {
public:
    using Error::Error;
};

class SearchSpaceTooLargeError : public Error {
public:
    using Error::Error;
};

/// Raised when an internal consistency check fails; indicates a bug in
/// this library, never a property of the input.
class InternalInconsistencyError : public Error {
public:
    using Error::Error;
};

// -- instance file errors -----------------------------------------------

/// Position-annotated error from the instance file parser.
class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& message)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                ": " + message),
          line_(line),
          column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

class PartitionError : public Error {
public:
    using Error::Error;
};

}  // namespace blocktrans
