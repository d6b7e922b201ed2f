#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "sos/context.hpp"
#include "sos/params.hpp"

namespace sos::cli {

enum class Subcommand { Compute, Verify, Bench, Sweep };
enum class ComputeMethod { Det, Brute, Both };

struct CliConfig {
  Subcommand subcommand = Subcommand::Compute;
  std::optional<std::string> config_path;
  std::optional<std::string> output_path;
  ComputeMethod method = ComputeMethod::Det;
  std::size_t brute_cap = 8;
  std::uint64_t seed = 42;
  std::size_t samples = 25;
  std::size_t max_n = 3;
  std::string suite = "all";
  bool diagnostics = false;
  std::size_t vary = 1;
  Complex from, to;
  std::size_t points = 10;
  double guard_tol = kDefaultGuardTol;
};

/// Parses a parameter document: {"eta": [re, im], "zeta": ..., "theta": ...,
/// "lambdas": [[re, im], ...], "xis": [[re, im], ...]} with an optional
/// numeric "guard_tol". Throws ParseError (line/field context) or
/// InvariantViolation (naming the failed guard). guard_tol, when given,
/// overrides the document's value.
ModelParams parse_params(const std::string& text, std::optional<double> guard_tol = std::nullopt);
ModelParams load_params(const std::string& path, std::optional<double> guard_tol = std::nullopt);
std::string params_to_json(const ModelParams& p);

/// "RE,IM" -> complex.
Complex parse_complex_pair(const std::string& text);

/// JSON {"Z": [re, im], "method": ..., "elapsed_ms": ...}; for Both a
/// {"results": [...], "rel_diff": ...} document.
std::string cmd_compute(const ModelParams& p, ComputeMethod method, std::size_t brute_cap,
                        const Context& ctx = {});

/// CSV n,t_det_ms,t_brute_ms,rel_diff for n = 1..max_n; brute columns are
/// "-" above the cap.
std::string cmd_bench(std::size_t max_n, std::uint64_t seed, std::size_t brute_cap,
                      const Context& ctx = {});

/// CSV lambda_re,lambda_im,z_re,z_im,status of the determinant Z with
/// lambda_vary (1-based) on a straight grid from..to. Non-generic points
/// are emitted with empty values and status "skipped".
std::string cmd_sweep(const ModelParams& p, std::size_t vary, Complex from, Complex to,
                      std::size_t points, const Context& ctx = {});

/// Entry point; returns the process exit code (0 iff everything requested
/// succeeded).
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace sos::cli
