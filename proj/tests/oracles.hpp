#pragma once

// Test-only reference computations. Nothing here calls into the code paths
// it is used to check.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <vector>

#include "sos/cmatrix.hpp"
#include "sos/params.hpp"

namespace sos::oracle {

/// Weight R^{a' b'}_{a b}(lambda; theta) written out directly, spins +1/-1,
/// a = aux in, b = site in, a' = aux out, b' = site out.
inline Complex face_weight(int a_out, int b_out, int a_in, int b_in, Complex l, Complex th,
                           Complex eta) {
  if (a_out + b_out != a_in + b_in) return 0.0;
  if (a_out == b_out) return std::sinh(l + eta);
  const Complex s = std::sinh(th);
  if (a_out == a_in) {  // b weights
    return a_out == 1 ? std::sinh(l) * std::sinh(th - eta) / s
                      : std::sinh(l) * std::sinh(-th - eta) / std::sinh(-th);
  }
  return a_out == 1 ? std::sinh(eta) * std::sinh(th - l) / s
                    : std::sinh(eta) * std::sinh(-th - l) / std::sinh(-th);
}

/// Embedded R on aux (x) chain assembled element by element.
/// aux_second: the factor acts as R_{i0}, i.e. site is the first R index.
inline CMatrix embedded_r(std::size_t n, std::size_t site, Complex x, Complex th, Complex eta,
                          bool aux_second) {
  const std::size_t d = std::size_t{1} << n;
  CMatrix out(2 * d);
  auto spin = [&](std::size_t chain, std::size_t s) { return ((chain >> (n - s)) & 1u) ? -1 : 1; };
  for (std::size_t row = 0; row < 2 * d; ++row) {
    for (std::size_t col = 0; col < 2 * d; ++col) {
      const std::size_t cr = row % d, cc = col % d;
      bool others_match = true;
      for (std::size_t s = 1; s <= n; ++s)
        if (s != site && spin(cr, s) != spin(cc, s)) others_match = false;
      if (!others_match) continue;
      int m = 0;
      for (std::size_t s = site + 1; s <= n; ++s) m += spin(cc, s);
      const int a_out = row < d ? 1 : -1, a_in = col < d ? 1 : -1;
      const int b_out = spin(cr, site), b_in = spin(cc, site);
      const Complex th_m = th - eta * static_cast<double>(m);
      out(row, col) = aux_second ? face_weight(b_out, a_out, b_in, a_in, x, th_m, eta)
                                 : face_weight(a_out, b_out, a_in, b_in, x, th_m, eta);
    }
  }
  return out;
}

/// Leibniz expansion; fine for N <= 6.
inline Complex leibniz_det(const CMatrix& m) {
  const std::size_t n = m.dim();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Complex total = 0.0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    Complex term = inversions % 2 ? -1.0 : 1.0;
    for (std::size_t i = 0; i < n; ++i) term *= m(i, perm[i]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

/// Closed-form two-configuration N = 1 value, typed out independently.
inline Complex z_single_row(Complex l, Complex x, Complex th, Complex eta, Complex zeta) {
  using std::sinh;
  return sinh(eta) * sinh(th - eta) / (sinh(th) * sinh(th)) *
         (sinh(th + zeta - l) / sinh(th + zeta + l) * sinh(l - x) * sinh(th + l + x) +
          sinh(zeta - l) / sinh(zeta + l) * sinh(l + x) * sinh(th - l + x));
}

/// Fixed reference instance, N = 1..3 (prefixes of the same lists).
inline ModelParams reference_params(std::size_t n) {
  ModelParams p;
  p.eta = {0.7, 0.05};
  p.zeta = {1.1, -0.2};
  p.theta = {0.9, 0.3};
  const std::vector<Complex> l = {{0.3, 0.1}, {-0.45, 0.22}, {0.83, -0.31}};
  const std::vector<Complex> x = {{0.2, -0.15}, {0.61, 0.07}, {-0.37, 0.4}};
  p.lambdas.assign(l.begin(), l.begin() + static_cast<long>(n));
  p.xis.assign(x.begin(), x.begin() + static_cast<long>(n));
  return p;
}

/// Z for reference_params(n), computed by an independent dense
/// Kronecker-product implementation outside this code base.
inline Complex reference_z(std::size_t n) {
  switch (n) {
    case 1: return {0.05453183154280271, 0.04944560618832842};
    case 2: return {-0.018488914217290014, 0.011839843239603184};
    default: return {-0.0030395774443084276, -0.00227666978242519};
  }
}

}  // namespace sos::oracle
