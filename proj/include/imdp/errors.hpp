// Copyright (c) imdpmin contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace imdp {

class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Malformed model text. Line and column are 1-based.
class ParseError : public Error {
   public:
    ParseError(std::size_t line, std::size_t column, std::string const& message)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message), line_(line), column_(column), detail_(message) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }
    std::string const& detail() const { return detail_; }

   private:
    std::size_t line_;
    std::size_t column_;
    std::string detail_;
};

/// Structural problem detected while assembling a model (unknown names, duplicates, deadlocks).
class ModelError : public Error {
   public:
    using Error::Error;
};

class SyncUncertaintyError : public Error {
   public:
    using Error::Error;
};

class DisabledActionError : public Error {
   public:
    using Error::Error;
};

class EmptyPolytopeError : public Error {
   public:
    using Error::Error;
};

class BlockMismatchError : public Error {
   public:
    using Error::Error;
};

class NotLabelUniformError : public Error {
   public:
    using Error::Error;
};

class OracleBoundError : public Error {
   public:
    using Error::Error;
};

class InvalidIntervalError : public Error {
   public:
    using Error::Error;
};

class UnboundedUntilError : public Error {
   public:
    using Error::Error;
};

class FormulaParseError : public Error {
   public:
    FormulaParseError(std::size_t column, std::string const& message)
        : Error("column " + std::to_string(column) + ": " + message), column_(column) {}

    std::size_t column() const { return column_; }

   private:
    std::size_t column_;
};

/// Raised when an internal consistency check fails; indicates a bug rather than bad input.
class InvariantError : public Error {
   public:
    using Error::Error;
};

}  // namespace imdp
