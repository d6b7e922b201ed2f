#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace sos {

using Complex = std::complex<double>;

/// Dense square complex matrix, row-major. Row index is the outgoing
/// basis state, column index the incoming one.
class CMatrix {
 public:
  CMatrix() = default;
  explicit CMatrix(std::size_t dim);
  CMatrix(std::size_t dim, std::initializer_list<Complex> row_major);

  static CMatrix identity(std::size_t dim);
  static CMatrix diagonal(std::span<const Complex> diag);

  std::size_t dim() const { return dim_; }

  Complex& operator()(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
  const Complex& operator()(std::size_t row, std::size_t col) const {
    return data_[row * dim_ + col];
  }

  std::span<Complex> data() { return data_; }
  std::span<const Complex> data() const { return data_; }

  CMatrix& operator+=(const CMatrix& other);
  CMatrix& operator-=(const CMatrix& other);
  CMatrix& operator*=(Complex scale);

  /// Largest entry modulus.
  double max_abs() const;

  CMatrix transpose() const;

  bool operator==(const CMatrix& other) const = default;

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> data_;
};

CMatrix operator+(CMatrix lhs, const CMatrix& rhs);
CMatrix operator-(CMatrix lhs, const CMatrix& rhs);
CMatrix operator*(const CMatrix& lhs, const CMatrix& rhs);
CMatrix operator*(Complex scale, CMatrix m);

/// Kronecker product; `a` carries the slower-varying index.
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// The 4x4 swap P on C^2 (x) C^2.
CMatrix swap4();

/// Max-entry modulus of lhs - rhs, divided by max(1, |lhs|_max, |rhs|_max).
/// Equals the plain absolute residual whenever both operands are O(1).
double scaled_residual(const CMatrix& lhs, const CMatrix& rhs);

/// |a - b| / max(|a|, |b|, 1e-300).
double relative_error(Complex a, Complex b);

}  // namespace sos
