#pragma once

#include <stdexcept>
#include <string>

namespace sos {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A denominator |sinh(d)| fell at or below the genericity guard.
class NearSingular : public Error {
 public:
  NearSingular(std::string denominator, double modulus);
  const std::string& denominator() const { return denominator_; }
  double modulus() const { return modulus_; }

 private:
  std::string denominator_;
  double modulus_;
};

class CapExceeded : public Error {
 public:
  using Error::Error;
};

class SamplingExhausted : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace sos
