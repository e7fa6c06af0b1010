#pragma once

#include <stdexcept>
#include <string>

namespace abconvex {

// Input errors are caller or data-entry mistakes (bad indices, malformed
// documents). Domain errors are mathematically meaningful refusals (an
// improper function, a mapping that is not cyclically monotone).
enum class ErrorKind { kInput, kDomain };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string code, const std::string& message)
      : std::runtime_error(message), kind_(kind), code_(std::move(code)) {}

  ErrorKind kind() const { return kind_; }
  // Stable machine-readable identifier, e.g. "not_cyclically_monotone".
  const std::string& code() const { return code_; }

 private:
  ErrorKind kind_;
  std::string code_;
};

class InputError : public Error {
 public:
  InputError(std::string code, const std::string& message)
      : Error(ErrorKind::kInput, std::move(code), message) {}
};

class DomainError : public Error {
 public:
  DomainError(std::string code, const std::string& message)
      : Error(ErrorKind::kDomain, std::move(code), message) {}
};

}  // namespace abconvex
