#pragma once

#include <complex>

#include "sos/cmatrix.hpp"

namespace sos {

/// Complex number stored as mantissa * 2^exponent so long products neither
/// overflow nor underflow.
class ScaledComplex {
 public:
  ScaledComplex() = default;
  ScaledComplex(Complex value);  // NOLINT(google-explicit-constructor)

  ScaledComplex& operator*=(const ScaledComplex& other);
  ScaledComplex& operator/=(const ScaledComplex& other);

  /// Nearest double value; may be inf or 0 outside the double range.
  Complex value() const;
  /// Natural log of the modulus; -inf for zero.
  double log_abs() const;
  bool is_zero() const { return mantissa_ == Complex{}; }

 private:
  void normalize();
  Complex mantissa_{1.0, 0.0};
  long exponent_ = 0;
};

struct DeterminantResult {
  ScaledComplex det;
  double min_pivot = 0.0;  // smallest pivot modulus met during elimination
};

/// Gaussian elimination with partial pivoting on the complex modulus.
DeterminantResult determinant(CMatrix m);

}  // namespace sos
