#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace freezetag {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A bad numeric or enum parameter (epsilon out of range, mu <= 0, K < 1, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

// An algorithm was called on an instance outside its domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Instance too large for an exhaustive method, or an enumeration budget ran out.
class CapacityError : public Error {
 public:
  using Error::Error;
};

struct Violation {
  int robot = -1;  // offending robot, -1 when the violation is global
  std::string message;
};

// Malformed instance or wake-up tree. Carries every violation found.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Violation> violations);
  ValidationError(int robot, std::string message);

  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

}  // namespace freezetag
