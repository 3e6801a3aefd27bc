#pragma once

#include <stdexcept>
#include <string>

namespace cawcoref {

// Malformed input text (CoNLL brackets, JSON syntax, wire formats).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_ = 0;
};

// Well-formed input that violates a domain invariant (head cycles, spans out of bounds).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad argument to an operation (k <= 0, malformed links, empty candidate ranges).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Unknown key in a mapping (token index without a word-to-span entry).
class LookupError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Score matrices whose supports do not line up.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cawcoref
