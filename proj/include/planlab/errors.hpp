#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace planlab {

/// Raised when an instance violates its own structural invariants
/// (out-of-range variable ids, values outside the domain, bad action ids).
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an operation is called on an input outside its contract,
/// e.g. the post-unique solver on an instance that is not post-unique.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, std::string message,
             std::string token = {})
      : std::runtime_error(format(line, column, message, token)),
        line_(line),
        column_(column),
        message_(std::move(message)),
        token_(std::move(token)) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& message() const noexcept { return message_; }
  const std::string& token() const noexcept { return token_; }

 private:
  static std::string format(std::size_t line, std::size_t column,
                            const std::string& message,
                            const std::string& token) {
    std::string out = std::to_string(line) + ":" + std::to_string(column) +
                      ": " + message;
    if (!token.empty()) out += " near '" + token + "'";
    return out;
  }

  std::size_t line_;
  std::size_t column_;
  std::string message_;
  std::string token_;
};

}  // namespace planlab
