#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sos/cmatrix.hpp"

namespace sos {

inline constexpr double kDefaultGuardTol = 1e-6;

/// Every free parameter of one lattice instance.
struct ModelParams {
  Complex eta;    // crossing parameter
  Complex zeta;   // boundary parameter
  Complex theta;  // external height
  std::vector<Complex> lambdas;  // row rapidities
  std::vector<Complex> xis;      // column inhomogeneities

  std::size_t n() const { return lambdas.size(); }
  bool operator==(const ModelParams&) const = default;
};

/// A named sinh argument that must stay away from zero.
struct Denominator {
  std::string label;
  Complex argument;
};

/// All arguments whose sinh the instance touches: theta+k*eta (k in -N..N+1),
/// zeta+-lambda, theta+zeta+-lambda, lambda+-xi, lambda+-xi+eta,
/// lambda_i+-lambda_j, lambda_i+lambda_j+eta, xi_i+-xi_j and 2*lambda.
std::vector<Denominator> genericity_denominators(const ModelParams& p);

/// First denominator with |sinh| <= guard_tol, if any.
std::optional<Denominator> first_violation(const ModelParams& p, double guard_tol);

/// Throws InvariantViolation on a shape problem (N = 0, length mismatch) or a
/// failed genericity guard; the message names the guard.
void validate(const ModelParams& p, double guard_tol);

/// kDefaultGuardTol, or SOS_GUARD_TOL when set to a positive number.
double guard_tol_from_env();

}  // namespace sos
