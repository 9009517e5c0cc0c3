#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace narrframe {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A raw label that is not a member of the slot's vocabulary.
class UnknownLabel : public Error {
 public:
  UnknownLabel(std::string raw, std::string slot);

  const std::string& raw() const { return raw_; }
  const std::string& slot() const { return slot_; }

 private:
  std::string raw_;
  std::string slot_;
};

// Malformed input text (config, catalog, JSON lines). `line` is 1-based, 0 if unknown.
class ParseError : public Error {
 public:
  ParseError(std::string source, std::size_t line, const std::string& message);

  const std::string& source() const { return source_; }
  std::size_t line() const { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

// Input parsed but broke one or more invariants.
class ValidationError : public Error {
 public:
  ValidationError(const std::string& context, std::vector<std::string> violations);

  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

}  // namespace narrframe
