#pragma once

// Embedding of two-space operators into multi-space carriers.
// Spaces are numbered 0..n-1, space 0 is the slowest-varying index and bit
// value 0 is spin up (sz = +1).

#include <cstddef>

#include "sos/cmatrix.hpp"

namespace sos::detail {

inline std::size_t bit_of(std::size_t index, std::size_t space, std::size_t n_spaces) {
  return (index >> (n_spaces - 1 - space)) & 1u;
}

inline int spin_of(std::size_t index, std::size_t space, std::size_t n_spaces) {
  return bit_of(index, space, n_spaces) == 0 ? 1 : -1;
}

/// Operator acting as local(state) on spaces (p, q), p first in the local
/// 4x4 basis, and as identity elsewhere. `local` receives the incoming
/// basis index and may read spectator spins from it (dynamical shifts); it
/// must not depend on the bits of p and q.
template <class LocalFn>
CMatrix embed_pair(std::size_t n_spaces, std::size_t p, std::size_t q, LocalFn&& local) {
  const std::size_t dim = std::size_t{1} << n_spaces;
  const std::size_t shift_p = n_spaces - 1 - p;
  const std::size_t shift_q = n_spaces - 1 - q;
  const std::size_t clear = ~((std::size_t{1} << shift_p) | (std::size_t{1} << shift_q));
  CMatrix out(dim);
  for (std::size_t col = 0; col < dim; ++col) {
    const CMatrix m = local(col);
    const std::size_t in = bit_of(col, p, n_spaces) * 2 + bit_of(col, q, n_spaces);
    for (std::size_t o = 0; o < 4; ++o) {
      const Complex v = m(o, in);
      if (v == Complex{}) continue;
      const std::size_t row = (col & clear) | ((o >> 1) << shift_p) | ((o & 1u) << shift_q);
      out(row, col) += v;
    }
  }
  return out;
}

}  // namespace sos::detail
