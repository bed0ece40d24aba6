#pragma once

#include <stdexcept>
#include <string>

namespace pfk3 {

/// Mismatched rings, unknown variables, malformed degrees.
class StructuralError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A computation that cannot finish: stuck reduction, order bound, singular input.
class ComputationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, int line, int column)
      : std::runtime_error(msg + " at " + std::to_string(line) + ":" + std::to_string(column)),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace pfk3
