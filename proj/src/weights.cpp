#include "sos/weights.hpp"

#include <algorithm>
#include <cmath>

#include "sos/errors.hpp"
#include "tensor_embed.hpp"

namespace sos {

namespace {

// b_plus and c_plus at (lambda, theta); the minus weights reuse this with -theta.
std::pair<Complex, Complex> b_c_plus(Complex lambda, Complex theta, Complex eta,
                                     double guard_tol) {
  const Complex s_theta = guarded_sinh(theta, guard_tol, "theta");
  return {std::sinh(lambda) * std::sinh(theta - eta) / s_theta,
          std::sinh(eta) * std::sinh(theta - lambda) / s_theta};
}

CMatrix sz_sum(int sign) {
  // sz (x) 1 + sign * 1 (x) sz, diagonal in (++, +-, -+, --).
  const Complex d[4] = {1.0 + sign, 1.0 - sign, -1.0 + sign, -1.0 - sign};
  return CMatrix::diagonal(d);
}

}  // namespace

FaceWeightSet face_weights(Complex lambda, Complex theta, Complex eta, double guard_tol) {
  const auto [bp, cp] = b_c_plus(lambda, theta, eta, guard_tol);
  const auto [bm, cm] = b_c_plus(lambda, -theta, eta, guard_tol);
  return {std::sinh(lambda + eta), bp, bm, cp, cm};
}

FaceWeightSet weights_in(const Context& ctx, Complex lambda, Complex theta, Complex eta) {
  if (ctx.counters) ++ctx.counters->r_matrices;
  return ctx.weights ? ctx.weights(lambda, theta, eta, ctx.guard_tol)
                     : face_weights(lambda, theta, eta, ctx.guard_tol);
}

CMatrix r_matrix(Complex lambda, Complex theta, Complex eta, const Context& ctx) {
  const FaceWeightSet w = weights_in(ctx, lambda, theta, eta);
  CMatrix r(4);
  r(0, 0) = w.a;
  r(1, 1) = w.b_plus;
  r(1, 2) = w.c_plus;
  r(2, 1) = w.c_minus;
  r(2, 2) = w.b_minus;
  r(3, 3) = w.a;
  return r;
}

CMatrix r_matrix_swapped(Complex lambda, Complex theta, Complex eta, const Context& ctx) {
  const CMatrix p = swap4();
  return p * r_matrix(lambda, theta, eta, ctx) * p;
}

CMatrix k_matrix(Complex lambda, Complex theta, Complex zeta, const Context& ctx) {
  const Complex up = std::sinh(theta + zeta - lambda) /
                     guarded_sinh(theta + zeta + lambda, ctx.guard_tol, "theta+zeta+lambda");
  const Complex down =
      std::sinh(zeta - lambda) / guarded_sinh(zeta + lambda, ctx.guard_tol, "zeta+lambda");
  const Complex d[2] = {up, down};
  return CMatrix::diagonal(d);
}

CMatrix partial_transpose_first(const CMatrix& m) {
  CMatrix t(4);
  for (std::size_t a1 = 0; a1 < 2; ++a1)
    for (std::size_t b1 = 0; b1 < 2; ++b1)
      for (std::size_t a2 = 0; a2 < 2; ++a2)
        for (std::size_t b2 = 0; b2 < 2; ++b2) t(a1 * 2 + a2, b1 * 2 + b2) = m(b1 * 2 + a2, a1 * 2 + b2);
  return t;
}

CheckReport check_dybe(Complex l1, Complex l2, Complex l3, Complex theta, Complex eta,
                       double tol, const Context& ctx) {
  using detail::embed_pair;
  using detail::spin_of;
  // Operators on V1 (x) V2 (x) V3; theta - eta*sz_k is read from the spectator space k.
  auto r_on = [&](std::size_t p, std::size_t q, Complex x, int shifted_by) {
    return embed_pair(3, p, q, [&](std::size_t col) {
      const double s = shifted_by < 0 ? 0.0 : spin_of(col, shifted_by, 3);
      return r_matrix(x, theta - eta * s, eta, ctx);
    });
  };
  const CMatrix lhs = r_on(0, 1, l1 - l2, 2) * r_on(0, 2, l1 - l3, -1) * r_on(1, 2, l2 - l3, 0);
  const CMatrix rhs = r_on(1, 2, l2 - l3, -1) * r_on(0, 2, l1 - l3, 1) * r_on(0, 1, l1 - l2, -1);
  return make_report("dybe", scaled_residual(lhs, rhs), tol,
                     ModelParams{eta, {}, theta, {l1, l2, l3}, {}});
}

CheckReport check_unitarity(Complex lambda, Complex theta, Complex eta, double tol,
                            const Context& ctx) {
  const CMatrix lhs = r_matrix(lambda, theta, eta, ctx) * r_matrix_swapped(-lambda, theta, eta, ctx);
  const CMatrix rhs = (-std::sinh(lambda - eta) * std::sinh(lambda + eta)) * CMatrix::identity(4);
  return make_report("unitarity", scaled_residual(lhs, rhs), tol,
                     ModelParams{eta, {}, theta, {lambda}, {}});
}

CheckReport check_reflection_equation(Complex l1, Complex l2, Complex theta, Complex eta,
                                      Complex zeta, double tol, const Context& ctx) {
  const CMatrix id2 = CMatrix::identity(2);
  const CMatrix k1 = kron(k_matrix(l1, theta, zeta, ctx), id2);
  const CMatrix k2 = kron(id2, k_matrix(l2, theta, zeta, ctx));
  const CMatrix lhs = r_matrix(l1 - l2, theta, eta, ctx) * k1 *
                      r_matrix_swapped(l1 + l2, theta, eta, ctx) * k2;
  const CMatrix rhs = k2 * r_matrix(l1 + l2, theta, eta, ctx) * k1 *
                      r_matrix_swapped(l1 - l2, theta, eta, ctx);
  return make_report("reflection_equation", scaled_residual(lhs, rhs), tol,
                     ModelParams{eta, zeta, theta, {l1, l2}, {}});
}

CheckReport check_ice_rule(Complex lambda, Complex theta, Complex eta, const Context& ctx) {
  const CMatrix r = r_matrix(lambda, theta, eta, ctx);
  const CMatrix s = sz_sum(+1);
  return make_report("ice_rule", (s * r - r * s).max_abs(), 0.0,
                     ModelParams{eta, {}, theta, {lambda}, {}});
}

CheckReport check_transposed_ice_rule(Complex lambda, Complex theta, Complex eta,
                                      const Context& ctx) {
  const CMatrix rt = partial_transpose_first(r_matrix(lambda, theta, eta, ctx));
  const CMatrix s = sz_sum(-1);
  return make_report("transposed_ice_rule", (s * rt - rt * s).max_abs(), 0.0,
                     ModelParams{eta, {}, theta, {lambda}, {}});
}

CheckReport check_theta_reflection(Complex lambda, Complex theta, Complex eta,
                                   const Context& ctx) {
  const FaceWeightSet w = weights_in(ctx, lambda, theta, eta);
  const FaceWeightSet m = weights_in(ctx, lambda, -theta, eta);
  const double residual = std::max(std::abs(w.b_minus - m.b_plus), std::abs(w.c_minus - m.c_plus));
  return make_report("theta_reflection", residual, 0.0, ModelParams{eta, {}, theta, {lambda}, {}});
}

}  // namespace sos
