#include "sos/partition.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "sos/chain.hpp"
#include "sos/determinant.hpp"
#include "sos/errors.hpp"

namespace sos {

namespace {

using Clock = std::chrono::steady_clock;

std::string sub(std::string_view name, std::size_t i) {
  return std::string(name) + std::to_string(i + 1);
}

void require_shape(const ModelParams& p) {
  if (p.n() == 0) throw InvariantViolation("N must be at least 1 (lambdas is empty)");
  if (p.xis.size() != p.n()) throw InvariantViolation("lambdas and xis differ in length");
}

/// sinh(theta + k eta)
Complex sh_theta(const ModelParams& p, long k) {
  return std::sinh(p.theta + static_cast<double>(k) * p.eta);
}

Complex sh_theta_guarded(const ModelParams& p, long k, double tol) {
  return guarded_sinh(p.theta + static_cast<double>(k) * p.eta, tol,
                      "theta+(" + std::to_string(k) + ")*eta");
}

/// prod_{i=1..N} sinh(theta+(N-2i)eta)/sinh(theta+(N-2i+1)eta)
Complex row_height_ratio(const ModelParams& p, double tol) {
  const auto n = static_cast<long>(p.n());
  Complex r = 1.0;
  for (long i = 1; i <= n; ++i) r *= sh_theta(p, n - 2 * i) / sh_theta_guarded(p, n - 2 * i + 1, tol);
  return r;
}

}  // namespace

const char* to_string(Method m) {
  switch (m) {
    case Method::BruteForce: return "brute";
    case Method::Determinant: return "det";
    case Method::ClosedFormN1: return "closed_n1";
  }
  return "?";
}

PartitionResult z_bruteforce(const ModelParams& p, const Context& ctx, std::size_t cap) {
  require_shape(p);
  if (cap > kHardBruteCap)
    throw InvariantViolation("brute-force cap " + std::to_string(cap) + " exceeds hard maximum " +
                             std::to_string(kHardBruteCap));
  if (p.n() > cap)
    throw CapExceeded("brute force limited to N <= " + std::to_string(cap) + ", got N = " +
                      std::to_string(p.n()));
  const auto start = Clock::now();
  const ChainSpace chain(p.n());
  std::vector<Complex> v(chain.dim());
  v[chain.all_up()] = 1.0;
  for (auto it = p.lambdas.rbegin(); it != p.lambdas.rend(); ++it) v = apply_double_row_b(*it, p, v, ctx);

  PartitionResult r;
  r.value = v[chain.all_down()];
  r.method = Method::BruteForce;
  r.elapsed = Clock::now() - start;
  r.n = p.n();
  r.log_abs = std::log(std::abs(r.value));
  return r;
}

Complex z_n1_closed(Complex lambda, Complex xi, Complex theta, Complex eta, Complex zeta,
                    const Context& ctx) {
  const double tol = ctx.guard_tol;
  const Complex s_theta = guarded_sinh(theta, tol, "theta");
  const Complex pre = std::sinh(eta) * std::sinh(theta - eta) / (s_theta * s_theta);
  const Complex k_up = std::sinh(theta + zeta - lambda) /
                       guarded_sinh(theta + zeta + lambda, tol, "theta+zeta+lambda");
  const Complex k_down = std::sinh(zeta - lambda) / guarded_sinh(zeta + lambda, tol, "zeta+lambda");
  return pre * (k_up * std::sinh(lambda - xi) * std::sinh(theta + lambda + xi) +
                k_down * std::sinh(lambda + xi) * std::sinh(theta - lambda + xi));
}

Complex m_entry(std::size_t i, std::size_t j, const ModelParams& p, MForm form,
                const Context& ctx) {
  const double tol = ctx.guard_tol;
  const Complex l = p.lambdas.at(i);
  const Complex x = p.xis.at(j);
  const Complex eta = p.eta;
  const std::string li = sub("lambda", i);
  const std::string xj = sub("xi", j);
  const Complex s_lm = guarded_sinh(l - x, tol, li + "-" + xj);
  const Complex s_lp = guarded_sinh(l + x, tol, li + "+" + xj);
  const Complex s_lm_eta = guarded_sinh(l - x + eta, tol, li + "-" + xj + "+eta");
  const Complex s_lp_eta = guarded_sinh(l + x + eta, tol, li + "+" + xj + "+eta");
  const Complex s_tzl = guarded_sinh(p.theta + p.zeta + l, tol, "theta+zeta+" + li);
  const Complex s_zl = guarded_sinh(p.zeta + l, tol, "zeta+" + li);

  if (form == MForm::ProductForm) {
    return std::sinh(p.theta + p.zeta + x) / s_tzl * std::sinh(p.zeta - x) / s_zl *
           std::sinh(2.0 * l) * std::sinh(eta) / (s_lm_eta * s_lp_eta * s_lm * s_lp);
  }
  const Complex s_theta = guarded_sinh(p.theta, tol, "theta");
  const Complex m_plus =
      (1.0 / s_lp - std::sinh(p.theta - eta) / (s_theta * s_lp_eta)) / s_lm_eta;
  const Complex m_minus =
      (1.0 / s_lm - std::sinh(p.theta + eta) / (s_theta * s_lm_eta)) / s_lp_eta;
  return std::sinh(p.theta + p.zeta - l) / s_tzl * m_plus + std::sinh(p.zeta - l) / s_zl * m_minus;
}

MMatrix m_matrix(const ModelParams& p, MForm form, const Context& ctx) {
  require_shape(p);
  MMatrix m{CMatrix(p.n()), form};
  for (std::size_t i = 0; i < p.n(); ++i)
    for (std::size_t j = 0; j < p.n(); ++j) m.entries(i, j) = m_entry(i, j, p, form, ctx);
  return m;
}

PartitionResult z_determinant(const ModelParams& p, MForm form, DetNormalization norm,
                              const Context& ctx) {
  require_shape(p);
  const auto start = Clock::now();
  const double tol = ctx.guard_tol;
  const std::size_t n = p.n();
  const auto nl = static_cast<long>(n);

  const MMatrix m = m_matrix(p, form, ctx);
  const DeterminantResult det = determinant(m.entries);
  ScaledComplex z = det.det;

  if (norm == DetNormalization::Recursive) {
    if ((nl * (nl - 1) / 2) % 2 == 1) z *= ScaledComplex(-1.0);
    for (long mm = 1; mm <= nl; ++mm) {
      for (long i = 1; i <= mm; ++i) {
        z *= ScaledComplex(sh_theta(p, mm - 2 * i));
        z /= ScaledComplex(sh_theta_guarded(p, mm - 2 * i + 1, tol));
      }
    }
  } else {
    if (nl % 2 == 1) z *= ScaledComplex(-1.0);
    for (long i = 1; i <= nl; ++i) {
      const ScaledComplex ratio =
          ScaledComplex(sh_theta(p, nl - 2 * i) / sh_theta_guarded(p, nl - 2 * i + 1, tol));
      for (long k = 0; k < nl - i + 1; ++k) z *= ratio;
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Complex l = p.lambdas[i];
      const Complex x = p.xis[j];
      const std::string tag = sub("lambda", i) + "," + sub("xi", j);
      z *= ScaledComplex(guarded_sinh(l + x, tol, tag + " (l+x)"));
      z *= ScaledComplex(guarded_sinh(l - x, tol, tag + " (l-x)"));
      z *= ScaledComplex(guarded_sinh(l + x + p.eta, tol, tag + " (l+x+eta)"));
      z *= ScaledComplex(guarded_sinh(l - x + p.eta, tol, tag + " (l-x+eta)"));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::string xij = sub("xi", j) + "," + sub("xi", i);
      const std::string lij = sub("lambda", j) + "," + sub("lambda", i);
      z /= ScaledComplex(guarded_sinh(p.xis[j] + p.xis[i], tol, xij + " (sum)"));
      z /= ScaledComplex(guarded_sinh(p.xis[j] - p.xis[i], tol, xij + " (difference)"));
      z /= ScaledComplex(guarded_sinh(p.lambdas[j] - p.lambdas[i], tol, lij + " (difference)"));
      z /= ScaledComplex(guarded_sinh(p.lambdas[j] + p.lambdas[i] + p.eta, tol, lij + " (sum+eta)"));
    }
  }

  PartitionResult r;
  r.value = z.value();
  r.method = Method::Determinant;
  r.elapsed = Clock::now() - start;
  r.n = n;
  r.cond_hint = det.min_pivot;
  r.log_abs = z.log_abs();
  return r;
}

Complex crossing_factor(Complex lambda_i, const ModelParams& p, CrossingConvention conv,
                        const Context& ctx) {
  const double tol = ctx.guard_tol;
  const Complex l = lambda_i;
  const double sign = conv == CrossingConvention::Uniform ? -1.0 : (p.n() % 2 == 0 ? -1.0 : 1.0);
  return sign * std::sinh(2.0 * (l + p.eta)) * std::sinh(l + p.zeta) /
         (guarded_sinh(2.0 * l, tol, "2*lambda") *
          guarded_sinh(l - p.zeta + p.eta, tol, "lambda-zeta+eta")) *
         std::sinh(l + p.zeta + p.theta) /
         guarded_sinh(l - p.theta - p.zeta + p.eta, tol, "lambda-theta-zeta+eta");
}

Complex recursion_rhs_lower(const ModelParams& p, Complex z_prev, const Context& ctx) {
  require_shape(p);
  if (p.lambdas.front() != p.xis.front())
    throw InvariantViolation("recursion_rhs_lower requires lambda_1 == xi_1");
  const double tol = ctx.guard_tol;
  const Complex l1 = p.lambdas.front();
  const Complex x1 = p.xis.front();
  Complex r = std::sinh(p.eta) * std::sinh(p.zeta - l1) / guarded_sinh(p.zeta + l1, tol, "zeta+lambda1");
  r *= row_height_ratio(p, tol);
  for (const Complex l : p.lambdas) r *= std::sinh(l + x1);
  for (std::size_t i = 1; i < p.n(); ++i) {
    r *= std::sinh(l1 - p.xis[i] + p.eta) * std::sinh(l1 + p.xis[i] + p.eta) *
         std::sinh(p.lambdas[i] - x1 + p.eta);
  }
  return r * z_prev;
}

Complex recursion_rhs_upper(const ModelParams& p, Complex z_prev, const Context& ctx) {
  require_shape(p);
  if (p.lambdas.back() != -p.xis.front())
    throw InvariantViolation("recursion_rhs_upper requires lambda_N == -xi_1");
  const double tol = ctx.guard_tol;
  const Complex ln = p.lambdas.back();
  const Complex x1 = p.xis.front();
  Complex r = std::sinh(p.eta) * std::sinh(p.theta + p.zeta - ln) /
              guarded_sinh(p.theta + p.zeta + ln, tol, "theta+zeta+lambdaN");
  r *= row_height_ratio(p, tol);
  for (const Complex l : p.lambdas) r *= std::sinh(l - x1);
  for (std::size_t i = 1; i < p.n(); ++i) {
    r *= std::sinh(ln + p.xis[i] + p.eta) * std::sinh(ln - p.xis[i] + p.eta) *
         std::sinh(p.lambdas[i - 1] + x1 + p.eta);
  }
  return r * z_prev;
}

ModelParams reduced_lower(const ModelParams& p) {
  ModelParams q = p;
  q.lambdas.erase(q.lambdas.begin());
  q.xis.erase(q.xis.begin());
  return q;
}

ModelParams reduced_upper(const ModelParams& p) {
  ModelParams q = p;
  q.lambdas.pop_back();
  q.xis.erase(q.xis.begin());
  return q;
}

Complex normalized_z(const ModelParams& p, std::size_t i, Complex z, ClearingFactor factor) {
  Complex sum = 0.0;
  for (const Complex l : p.lambdas) sum += l;
  const Complex l = p.lambdas.at(i);
  const Complex clear = factor == ClearingFactor::ZetaPole ? std::sinh(p.zeta + l)
                                                           : std::sinh(p.theta + l);
  return std::exp(static_cast<double>(2 * p.n() + 2) * sum) * std::sinh(p.theta + p.zeta + l) *
         clear * z;
}

}  // namespace sos
