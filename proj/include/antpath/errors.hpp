#pragma once

#include <stdexcept>
#include <string>

namespace antpath {

// Node outside the map or on an obstacle.
class InvalidNodeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Node sequence containing a non-adjacent, blocked, corner-cutting or repeated step.
class InvalidPathError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvalidInstanceError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Inputs for which a formula has a zero denominator (i == j, single-node path, S == T).
class DegenerateError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class NoPathError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, int line, const std::string& what)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace antpath
