#pragma once

#include "sos/cmatrix.hpp"
#include "sos/context.hpp"
#include "sos/report.hpp"

namespace sos {

/// Trigonometric SOS face weights:
///   a       = sinh(lambda + eta)
///   b_plus  = sinh(lambda) sinh(theta - eta) / sinh(theta)
///   c_plus  = sinh(eta) sinh(theta - lambda) / sinh(theta)
/// with b_minus, c_minus obtained from b_plus, c_plus by theta -> -theta.
/// Throws NearSingular when |sinh(theta)| <= guard_tol.
FaceWeightSet face_weights(Complex lambda, Complex theta, Complex eta,
                           double guard_tol = kDefaultGuardTol);

/// Weights through ctx.weights when set, face_weights otherwise.
FaceWeightSet weights_in(const Context& ctx, Complex lambda, Complex theta, Complex eta);

/// 4x4 R(lambda; theta) on aux (x) site in basis (++, +-, -+, --).
CMatrix r_matrix(Complex lambda, Complex theta, Complex eta, const Context& ctx = {});

/// R_21 = P R_12 P.
CMatrix r_matrix_swapped(Complex lambda, Complex theta, Complex eta, const Context& ctx = {});

/// diag(sinh(theta+zeta-lambda)/sinh(theta+zeta+lambda), sinh(zeta-lambda)/sinh(zeta+lambda)).
CMatrix k_matrix(Complex lambda, Complex theta, Complex zeta, const Context& ctx = {});

// Identity checks. Residuals are scaled_residual(LHS, RHS).

/// Dynamical Yang-Baxter equation on V1 (x) V2 (x) V3.
CheckReport check_dybe(Complex l1, Complex l2, Complex l3, Complex theta, Complex eta,
                       double tol, const Context& ctx = {});

/// R12(lambda) R21(-lambda) = -sinh(lambda-eta) sinh(lambda+eta) Id.
CheckReport check_unitarity(Complex lambda, Complex theta, Complex eta, double tol,
                            const Context& ctx = {});

/// R12(l1-l2) K1(l1) R21(l1+l2) K2(l2) = K2(l2) R12(l1+l2) K1(l1) R21(l1-l2).
CheckReport check_reflection_equation(Complex l1, Complex l2, Complex theta, Complex eta,
                                      Complex zeta, double tol, const Context& ctx = {});

/// [sz (x) 1 + 1 (x) sz, R] = 0; residual is the exact commutator maximum.
CheckReport check_ice_rule(Complex lambda, Complex theta, Complex eta, const Context& ctx = {});

/// [sz (x) 1 - 1 (x) sz, R^{t1}] = 0.
CheckReport check_transposed_ice_rule(Complex lambda, Complex theta, Complex eta,
                                      const Context& ctx = {});

/// b_minus(lambda, theta) == b_plus(lambda, -theta) and likewise for c; exact.
CheckReport check_theta_reflection(Complex lambda, Complex theta, Complex eta,
                                   const Context& ctx = {});

/// Partial transpose over the first tensor factor of a 4x4 operator.
CMatrix partial_transpose_first(const CMatrix& m);

}  // namespace sos
