#include "sos/params.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "sos/context.hpp"
#include "sos/errors.hpp"

namespace sos {

NearSingular::NearSingular(std::string denominator, double modulus)
    : Error("near-singular denominator sinh(" + denominator + "), |sinh| = " +
            std::to_string(modulus)),
      denominator_(std::move(denominator)),
      modulus_(modulus) {}

Complex guarded_sinh(Complex arg, double guard_tol, std::string_view label) {
  const Complex s = std::sinh(arg);
  if (!(std::abs(s) > guard_tol)) throw NearSingular(std::string(label), std::abs(s));
  return s;
}

namespace {

std::string idx(std::string_view name, std::size_t i) {
  std::ostringstream os;
  os << name << i + 1;
  return os.str();
}

}  // namespace

std::vector<Denominator> genericity_denominators(const ModelParams& p) {
  const std::size_t n = p.n();
  const auto ni = static_cast<long>(n);
  std::vector<Denominator> out;
  for (long k = -ni; k <= ni + 1; ++k) {
    out.push_back({"theta" + std::string(k < 0 ? "" : "+") + std::to_string(k) + "*eta",
                   p.theta + static_cast<double>(k) * p.eta});
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Complex l = p.lambdas[i];
    const std::string li = idx("lambda", i);
    out.push_back({"zeta+" + li, p.zeta + l});
    out.push_back({"zeta-" + li, p.zeta - l});
    out.push_back({"theta+zeta+" + li, p.theta + p.zeta + l});
    out.push_back({"theta+zeta-" + li, p.theta + p.zeta - l});
    out.push_back({"2*" + li, 2.0 * l});
    for (std::size_t j = 0; j < p.xis.size(); ++j) {
      const Complex x = p.xis[j];
      const std::string xj = idx("xi", j);
      out.push_back({li + "+" + xj, l + x});
      out.push_back({li + "-" + xj, l - x});
      out.push_back({li + "+" + xj + "+eta", l + x + p.eta});
      out.push_back({li + "-" + xj + "+eta", l - x + p.eta});
    }
    for (std::size_t j = i; j < n; ++j) {
      const std::string lj = idx("lambda", j);
      out.push_back({li + "+" + lj + "+eta", l + p.lambdas[j] + p.eta});
      if (j == i) continue;
      out.push_back({li + "+" + lj, l + p.lambdas[j]});
      out.push_back({li + "-" + lj, l - p.lambdas[j]});
    }
  }
  for (std::size_t i = 0; i < p.xis.size(); ++i) {
    for (std::size_t j = i + 1; j < p.xis.size(); ++j) {
      out.push_back({idx("xi", i) + "+" + idx("xi", j), p.xis[i] + p.xis[j]});
      out.push_back({idx("xi", i) + "-" + idx("xi", j), p.xis[i] - p.xis[j]});
    }
  }
  return out;
}

std::optional<Denominator> first_violation(const ModelParams& p, double guard_tol) {
  for (auto& d : genericity_denominators(p)) {
    if (!(std::abs(std::sinh(d.argument)) > guard_tol)) return d;
  }
  return std::nullopt;
}

void validate(const ModelParams& p, double guard_tol) {
  if (p.lambdas.empty()) throw InvariantViolation("N must be at least 1 (lambdas is empty)");
  if (p.lambdas.size() != p.xis.size()) {
    throw InvariantViolation("lambdas and xis differ in length (" +
                             std::to_string(p.lambdas.size()) + " vs " +
                             std::to_string(p.xis.size()) + ")");
  }
  if (auto v = first_violation(p, guard_tol)) {
    throw InvariantViolation("genericity guard failed: |sinh(" + v->label + ")| <= " +
                             std::to_string(guard_tol));
  }
}

double guard_tol_from_env() {
  if (const char* env = std::getenv("SOS_GUARD_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && v > 0.0 && std::isfinite(v)) return v;
  }
  return kDefaultGuardTol;
}

}  // namespace sos
