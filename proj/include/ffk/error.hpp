#pragma once

#include <stdexcept>
#include <string>

namespace ffk {

// Base of every error raised by the library. The CLI maps these to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
  explicit DivisionByZero(const std::string& what) : Error(what) {}
};

class UnsupportedCharacteristic : public Error {
 public:
  explicit UnsupportedCharacteristic(const std::string& what) : Error(what) {}
};

class UndefinedGcd : public Error {
 public:
  UndefinedGcd() : Error("gcd(0, 0) is undefined") {}
};

class NotFactorable : public Error {
 public:
  explicit NotFactorable(const std::string& what) : Error(what) {}
};

class InvalidParameter : public Error {
 public:
  explicit InvalidParameter(const std::string& what) : Error(what) {}
};

class InvalidField : public Error {
 public:
  explicit InvalidField(const std::string& what) : Error(what) {}
};

class IncompatibleCyclotomicOrder : public Error {
 public:
  IncompatibleCyclotomicOrder(unsigned a, unsigned b)
      : Error("cyclotomic orders differ: " + std::to_string(a) + " vs " + std::to_string(b)) {}
};

class InvalidSupport : public Error {
 public:
  explicit InvalidSupport(const std::string& what) : Error(what) {}
};

class HypothesisViolation : public Error {
 public:
  explicit HypothesisViolation(const std::string& clause)
      : Error("hypothesis violated: " + clause), clause_(clause) {}
  const std::string& clause() const { return clause_; }

 private:
  std::string clause_;
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(what) {}
};

class CostLimitExceeded : public Error {
 public:
  CostLimitExceeded(const std::string& what, double estimate)
      : Error(what), estimate_(estimate) {}
  double estimate() const { return estimate_; }

 private:
  double estimate_;
};

}  // namespace ffk
