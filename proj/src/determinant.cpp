#include "sos/determinant.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace sos {

ScaledComplex::ScaledComplex(Complex value) : mantissa_(value), exponent_(0) { normalize(); }

void ScaledComplex::normalize() {
  const double m = std::max(std::abs(mantissa_.real()), std::abs(mantissa_.imag()));
  if (m == 0.0 || !std::isfinite(m)) return;
  int e = 0;
  std::frexp(m, &e);
  mantissa_ = {std::ldexp(mantissa_.real(), -e), std::ldexp(mantissa_.imag(), -e)};
  exponent_ += e;
}

ScaledComplex& ScaledComplex::operator*=(const ScaledComplex& other) {
  mantissa_ *= other.mantissa_;
  exponent_ += other.exponent_;
  normalize();
  return *this;
}

ScaledComplex& ScaledComplex::operator/=(const ScaledComplex& other) {
  mantissa_ /= other.mantissa_;
  exponent_ -= other.exponent_;
  normalize();
  return *this;
}

Complex ScaledComplex::value() const {
  constexpr long kMax = std::numeric_limits<int>::max() / 2;
  const long e = std::clamp(exponent_, -kMax, kMax);
  return {std::ldexp(mantissa_.real(), static_cast<int>(e)),
          std::ldexp(mantissa_.imag(), static_cast<int>(e))};
}

double ScaledComplex::log_abs() const {
  if (is_zero()) return -std::numeric_limits<double>::infinity();
  return std::log(std::abs(mantissa_)) + static_cast<double>(exponent_) * std::log(2.0);
}

DeterminantResult determinant(CMatrix m) {
  const std::size_t n = m.dim();
  DeterminantResult out;
  out.min_pivot = std::numeric_limits<double>::infinity();
  ScaledComplex det(1.0);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(m(k, k));
    for (std::size_t r = k + 1; r < n; ++r) {
      if (const double a = std::abs(m(r, k)); a > best) best = a, piv = r;
    }
    out.min_pivot = std::min(out.min_pivot, best);
    if (best == 0.0) {
      out.det = ScaledComplex(0.0);
      return out;
    }
    if (piv != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(m(k, c), m(piv, c));
      det *= ScaledComplex(-1.0);
    }
    const Complex pivot = m(k, k);
    det *= ScaledComplex(pivot);
    for (std::size_t r = k + 1; r < n; ++r) {
      const Complex f = m(r, k) / pivot;
      if (f == Complex{}) continue;
      for (std::size_t c = k + 1; c < n; ++c) m(r, c) -= f * m(k, c);
    }
  }
  if (n == 0) out.min_pivot = 0.0;
  out.det = det;
  return out;
}

}  // namespace sos
