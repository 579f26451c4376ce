#pragma once

#include <stdexcept>
#include <string>

namespace fge {

// Malformed L-system text; line/column are 1-based.
class ParseError : public std::runtime_error {
  public:
    ParseError(std::string message, int line, int column)
        : std::runtime_error("parse error at " + std::to_string(line) + ":" +
                             std::to_string(column) + ": " + message),
          line_(line),
          column_(column) {}
    int line() const { return line_; }
    int column() const { return column_; }

  private:
    int line_;
    int column_;
};

// A word contains a symbol the system does not classify.
class ClassificationError : public std::runtime_error {
  public:
    explicit ClassificationError(char symbol)
        : std::runtime_error(std::string("unclassified symbol '") + symbol + "'"),
          symbol_(symbol) {}
    char symbol() const { return symbol_; }

  private:
    char symbol_;
};

// Branch stack underflow / overflow / unclosed branch.
class BranchError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Precondition violations on otherwise well-formed inputs.
class DomainError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Generator with d <= 1, no visible trail, or dimension outside (0, 2].
class DegenerateError : public DomainError {
    using DomainError::DomainError;
};

// Estimator asked for more tail points than the sample provides.
class InsufficientTailError : public DomainError {
    using DomainError::DomainError;
};

}  // namespace fge
