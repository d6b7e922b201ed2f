#pragma once

#include <atomic>
#include <cstddef>
#include <string_view>

#include "sos/cmatrix.hpp"
#include "sos/params.hpp"

namespace sos {

/// The six nonzero face weights at one (lambda, theta).
struct FaceWeightSet {
  Complex a;        // R++_++ = R--_--
  Complex b_plus;   // R+-_+-
  Complex b_minus;  // R-+_-+
  Complex c_plus;   // R+-_-+
  Complex c_minus;  // R-+_+-
};

using WeightFn = FaceWeightSet (*)(Complex lambda, Complex theta, Complex eta, double guard_tol);

/// Counts operator builds; lets tests assert which layers a computation touched.
struct OpCounters {
  std::atomic<std::size_t> r_matrices{0};
  std::atomic<std::size_t> chain_operators{0};
};

/// Evaluation settings threaded through every computation. Plain value;
/// nothing here is global.
struct Context {
  double guard_tol = kDefaultGuardTol;
  /// Replaces the trigonometric weights when set (mutation tests).
  WeightFn weights = nullptr;
  OpCounters* counters = nullptr;
};

/// sinh(arg), throwing NearSingular(label) when |sinh(arg)| <= guard_tol.
Complex guarded_sinh(Complex arg, double guard_tol, std::string_view label);

}  // namespace sos
