#ifndef CWKIT_ERROR_HPP
#define CWKIT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace cwkit {

/// Classification of a failure, mirrored by the CLI status and exit code.
enum class ErrorKind {
  invalid_argument,  // caller misuse: mismatched fields, zero divisors, bad syntax
  rejected,          // mathematically valid input that fails a required check
  unsupported,       // a case the library deliberately does not decide
  falsified,         // an exact verification that came out false
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what)
      : Error(ErrorKind::invalid_argument, what) {}
};

class Rejected : public Error {
 public:
  explicit Rejected(const std::string& what) : Error(ErrorKind::rejected, what) {}
};

class Unsupported : public Error {
 public:
  explicit Unsupported(const std::string& what)
      : Error(ErrorKind::unsupported, what) {}
};

class Falsified : public Error {
 public:
  explicit Falsified(const std::string& what)
      : Error(ErrorKind::falsified, what) {}
};

}  // namespace cwkit

#endif  // CWKIT_ERROR_HPP
