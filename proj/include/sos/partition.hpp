#pragma once

#include <chrono>
#include <cstddef>
#include <optional>

#include "sos/cmatrix.hpp"
#include "sos/context.hpp"
#include "sos/params.hpp"

namespace sos {

/// Default and hard upper bound for the brute-force chain length.
inline constexpr std::size_t kDefaultBruteCap = 8;
inline constexpr std::size_t kHardBruteCap = 12;

enum class Method { BruteForce, Determinant, ClosedFormN1 };

const char* to_string(Method m);

struct PartitionResult {
  Complex value;
  Method method = Method::Determinant;
  std::chrono::duration<double, std::milli> elapsed{};
  std::size_t n = 0;
  /// Smallest elimination pivot; set for the determinant method only.
  std::optional<double> cond_hint;
  /// ln|Z|, finite even when value over- or underflows a double.
  double log_abs = 0.0;
};

/// Brute-force Z = <all down| B(lambda_1) ... B(lambda_N) |all up>.
/// Throws CapExceeded when N > cap (cap itself is limited to kHardBruteCap).
PartitionResult z_bruteforce(const ModelParams& p, const Context& ctx = {},
                             std::size_t cap = kDefaultBruteCap);

/// The two-configuration N = 1 partition function.
Complex z_n1_closed(Complex lambda, Complex xi, Complex theta, Complex eta, Complex zeta,
                    const Context& ctx = {});

enum class MForm { SumForm, ProductForm };

struct MMatrix {
  CMatrix entries;
  MForm form = MForm::SumForm;
};

/// Entry M_ij (0-based i, j).
/// SumForm:  K+(l_i) M+_ij + K-(l_i) M-_ij with
///           M+-_ij = [1/sinh(l -+ x + eta)] (1/sinh(l +- x) - sinh(theta -+ eta)/(sinh theta sinh(l +- x + eta))).
/// ProductForm: factorized expression with explicit zeros at xi_j = zeta and lambda_i = 0.
Complex m_entry(std::size_t i, std::size_t j, const ModelParams& p, MForm form,
                const Context& ctx = {});
MMatrix m_matrix(const ModelParams& p, MForm form, const Context& ctx = {});

/// Normalisation of the determinant representation.
///  Recursive:    sign (-1)^{N(N-1)/2} and theta factor
///                prod_{m=1..N} prod_{i=1..m} sinh(theta+(m-2i)eta)/sinh(theta+(m-2i+1)eta),
///                the factor the lambda_1 = xi_1 reduction accumulates.
///  PowerProduct: sign (-1)^N and prod_{i=1..N} [sinh(theta+(N-2i)eta)/sinh(theta+(N-2i+1)eta)]^{N-i+1}.
///                Agrees with Recursive at N = 1 only; kept for comparison.
enum class DetNormalization { Recursive, PowerProduct };

/// Single-determinant Z. Ill-conditioning shows up as cond_hint < 1e-10.
PartitionResult z_determinant(const ModelParams& p, MForm form = MForm::SumForm,
                              DetNormalization norm = DetNormalization::Recursive,
                              const Context& ctx = {});

inline constexpr double kIllConditionedPivot = 1e-10;

enum class CrossingConvention { Uniform, Alternating };

/// Z(.., -l_i - eta, ..) / Z(.., l_i, ..)
///   = s sinh(2(l+eta)) sinh(l+zeta) sinh(l+zeta+theta)
///       / (sinh(2l) sinh(l-zeta+eta) sinh(l-theta-zeta+eta)),
/// s = -1 (Uniform) or -(-1)^N (Alternating, wrong for odd N).
Complex crossing_factor(Complex lambda_i, const ModelParams& p,
                        CrossingConvention conv = CrossingConvention::Uniform,
                        const Context& ctx = {});

/// Right-hand side of the reduction at lambda_1 = xi_1; z_prev is Z for
/// lambdas 2..N, xis 2..N (1 when N = 1). Requires lambda_1 == xi_1 exactly.
Complex recursion_rhs_lower(const ModelParams& p, Complex z_prev, const Context& ctx = {});

/// Right-hand side of the reduction at lambda_N = -xi_1; z_prev is Z for
/// lambdas 1..N-1, xis 2..N. Requires lambda_N == -xi_1 exactly.
Complex recursion_rhs_upper(const ModelParams& p, Complex z_prev, const Context& ctx = {});

/// Parameters with lambda_1 and xi_1 removed (lower reduction) or
/// lambda_N and xi_1 removed (upper reduction).
ModelParams reduced_lower(const ModelParams& p);
ModelParams reduced_upper(const ModelParams& p);

/// Second factor clearing the lambda_i poles of Z.
///  ZetaPole:     sinh(zeta + lambda_i), the K-matrix denominator (polynomial result).
///  ThetaLiteral: sinh(theta + lambda_i); does not clear the pole, kept for comparison.
enum class ClearingFactor { ZetaPole, ThetaLiteral };

/// exp((2N+2) sum lambda) sinh(theta+zeta+lambda_i) F(lambda_i) z, a polynomial
/// of degree <= 2N+2 in exp(2 lambda_i) for the ZetaPole factor.
Complex normalized_z(const ModelParams& p, std::size_t i, Complex z,
                     ClearingFactor factor = ClearingFactor::ZetaPole);

}  // namespace sos
