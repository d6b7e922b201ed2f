#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "sos/context.hpp"
#include "sos/params.hpp"
#include "sos/report.hpp"

namespace sos {

/// Rectangle in the complex plane every sampled parameter is drawn from.
struct ParamBox {
  double re_min = -1.5, re_max = 1.5;
  double im_min = -1.2, im_max = 1.2;
};

struct SuiteConfig {
  std::uint64_t seed = 42;
  std::vector<std::size_t> n_values{1, 2, 3};
  std::size_t samples_per_case = 25;
  std::map<std::string, double> tolerances;  // check name -> tolerance
  double guard_tol = kDefaultGuardTol;
  ParamBox domain;
  std::size_t max_rejections = 1000;
  /// Adds the cases that exercise the alternative (failing) conventions.
  bool include_diagnostics = false;
};

/// Tolerance per check name.
std::map<std::string, double> default_tolerances();
SuiteConfig default_suite_config();

/// Throws InvariantViolation on samples_per_case == 0, a non-positive
/// tolerance, an empty n list or an empty box.
void validate(const SuiteConfig& cfg);

/// Uniform draw from cfg.domain for every parameter, rejection-resampled until
/// every genericity denominator (plus 2 lambda, lambda-zeta+eta and
/// lambda-theta-zeta+eta) clears cfg.guard_tol. Deterministic in
/// (cfg.seed, n, draw_index). Throws SamplingExhausted after
/// cfg.max_rejections rejections.
ModelParams sample_params(const SuiteConfig& cfg, std::size_t n, std::uint64_t draw_index);

/// Extra guard arguments used by the sampler on top of genericity_denominators.
std::vector<Denominator> sampler_extra_denominators(const ModelParams& p);

/// Lagrange interpolation through (xs, ys), evaluated at x.
Complex interpolate_at(std::span<const Complex> xs, std::span<const Complex> ys, Complex x);

enum class SuiteName { Weights, Algebra, Partition, All };

SuiteName parse_suite_name(const std::string& s);
const char* to_string(SuiteName s);

struct CaseRecord {
  std::size_t n = 0;  // chain length, 0 for single-vertex checks
  CheckReport report;
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<CaseRecord> cases;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t skipped = 0;
  std::map<std::string, double> wall_ms;  // per sub-suite
  SuiteConfig config;
};

/// Runs the named checks over n_values x samples_per_case. Failures are
/// recorded, never thrown; NearSingular draws count as skipped and are
/// resampled. ctx supplies the weight function and counters; its
/// guard_tol is replaced by cfg.guard_tol.
SuiteReport run_suite(SuiteName name, const SuiteConfig& cfg, const Context& ctx = {});

/// JSON document: {"suite", "seed", "cases": [{"name", "n", "residual", "tol",
/// "passed"}], "summary": {"passed", "failed", "skipped"}}. Timings are left
/// out so equal configs give byte-identical output.
std::string to_json(const SuiteReport& report);

}  // namespace sos
